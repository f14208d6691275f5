#pragma once

#include "hubplan/core/types.hpp"
#include "hubplan/milp/model.hpp"
#include "hubplan/model/config.hpp"
#include "hubplan/model/var_index.hpp"

namespace hubplan::model {

struct AssembledModel {
  milp::MilpModel milp;
  VarIndex index;
  double annualization = 0.0;
};

/// Builds the full planning MILP. Deterministic: equal inputs give equal models.
AssembledModel assemble_model(const PlanningInputs& inputs, const ModelConfig& config);

}  // namespace hubplan::model
