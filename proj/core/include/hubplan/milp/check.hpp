#pragma once

#include <span>
#include <string>
#include <vector>

#include "hubplan/milp/model.hpp"

namespace hubplan::milp {

struct FeasibilityReport {
  double max_row_violation = 0.0;
  double max_bound_violation = 0.0;
  double max_integrality_violation = 0.0;
  std::vector<std::string> issues;

  bool ok() const noexcept { return issues.empty(); }
};

/// Re-evaluates every row, bound and integrality requirement of `model` at `x`
/// directly from the model data. Row violations are measured relative to
/// 1 + |rhs|.
FeasibilityReport check_solution(const MilpModel& model, std::span<const double> x,
                                 double feas_tol = 1e-6, double int_tol = 1e-6);

}  // namespace hubplan::milp
