#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hubplan/core/types.hpp"
#include "hubplan/model/solution.hpp"

namespace hubplan::analysis {

struct VerifyOptions {
  /// Electric residual limit, scaled by 1 + the largest electric load.
  double balance_tol = 1e-6;
  double heat_tol = 1e-6;
  double storage_tol = 1e-6;
  double bound_tol = 1e-6;
  double int_tol = 1e-6;
};

struct VerifyReport {
  double max_elec_residual = 0.0;
  double min_heat_surplus = 0.0;
  double max_storage_residual = 0.0;
  double max_bound_violation = 0.0;
  double max_integrality = 0.0;
  int substandard = 0;
  int substandard_limit = 0;
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

/// Re-checks a plan against the physical model without looking at solver
/// rows: balances, device limits, storage dynamics and cyclic conditions,
/// EV charging, integrality of the investment counts, and the chance limit.
VerifyReport verify_plan(const PlanningInputs& inputs, const model::PlanSolution& plan, double zeta,
                         const VerifyOptions& options = {});

nlohmann::json to_json(const VerifyReport& report);

}  // namespace hubplan::analysis
