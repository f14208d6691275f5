#pragma once

#include <vector>

#include "hubplan/analysis/verify.hpp"
#include "hubplan/core/error.hpp"
#include "hubplan/core/types.hpp"
#include "hubplan/model/solution.hpp"

namespace hubplan::analysis {

/// Cost components in 10^4 CNY.
struct CostBreakdown {
  double fc_investment = 0.0;
  double bess_investment = 0.0;
  double gas_cost = 0.0;
  double grid_cost = 0.0;
  double carbon_from_elec = 0.0;
  double carbon_from_gas = 0.0;
  double soc_penalty = 0.0;
  double total = 0.0;

  double sum_of_parts() const noexcept;
};

/// The plan failed verification; the report lists what broke.
class InfeasibleSolution : public Error {
 public:
  explicit InfeasibleSolution(VerifyReport report);
  const VerifyReport& report() const noexcept { return report_; }

 private:
  VerifyReport report_;
};

/// Investment terms only, for a given first-stage plan.
CostBreakdown investment_costs(const EquipmentCatalog& catalog, double bess_capacity,
                               const std::vector<double>& fc_units);

/// Recomputes every cost term from the dispatch values. The departure
/// penalty is m * p * max(0, target - departure energy) per vehicle. Throws
/// InfeasibleSolution when verify_plan reports a violation.
CostBreakdown cost_breakdown(const model::PlanSolution& plan, const PlanningInputs& inputs, double zeta,
                             double m);

}  // namespace hubplan::analysis
