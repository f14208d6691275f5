#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "hubplan/core/types.hpp"
#include "hubplan/model/solution.hpp"

namespace hubplan::analysis {

struct SubstandardDeparture {
  int scenario = 0;
  int ev = 0;
  double soc = 0.0;
};

struct ChanceAudit {
  std::vector<double> worst_departure_soc;   // per scenario, NaN without vehicles
  std::vector<int> substandard_scenarios;
  std::vector<SubstandardDeparture> departures;
  int limit = 0;
  bool pass = true;

  int count() const noexcept { return static_cast<int>(substandard_scenarios.size()); }
};

/// A scenario is substandard when any vehicle departs below the target state
/// of charge by more than 1e-9. Passes when the count is at most floor(N * zeta).
ChanceAudit chance_audit(const model::PlanSolution& plan, const EvFleetSpec& fleet, double zeta);

nlohmann::json to_json(const ChanceAudit& audit);

}  // namespace hubplan::analysis
