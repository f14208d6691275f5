#pragma once

#include <optional>
#include <string>

#include "hubplan/milp/bnb.hpp"
#include "hubplan/model/assemble.hpp"
#include "hubplan/model/solution.hpp"

namespace hubplan::model {

struct PlanResult {
  AssembledModel model;
  milp::BnbSolution bnb;
  /// Present whenever the search found an incumbent.
  std::optional<PlanSolution> solution;
};

/// Assembles and solves the planning model. The incumbent is polished by
/// re-solving the LP with every integer column fixed at its rounded value, so
/// integer columns are exact and continuous values come from a fresh basis. In
/// relaxed mode the dispatch is then moved, at no extra cost, away from
/// same-hour charge and discharge on a store where an alternative exists.
PlanResult solve_plan(const PlanningInputs& inputs, const ModelConfig& config,
                      const milp::BnbOptions& options = {});

/// Names the first constraint family whose addition makes the LP relaxation
/// infeasible, adding families in the order balance and device limits, BESS,
/// TESS, EV, chance. Returns "integrality" when every relaxation is feasible.
std::string diagnose_infeasibility(const PlanningInputs& inputs, const ModelConfig& config);

}  // namespace hubplan::model
