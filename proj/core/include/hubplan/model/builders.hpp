#pragma once

#include <vector>

#include "hubplan/core/types.hpp"
#include "hubplan/milp/model.hpp"
#include "hubplan/model/config.hpp"
#include "hubplan/model/var_index.hpp"

namespace hubplan::model {

// Each builder is a pure function of its inputs and emits rows in
// (scenario, hour, type, vehicle) order.

/// Objective coefficient per column, in 10^4 CNY. `m` is the annualization
/// factor with the 1/N scenario weight folded in.
std::vector<double> build_objective(const VarIndex& index, const PlanningInputs& inputs,
                                    const ModelConfig& config, double m);

/// Electric equality and heat covering row per (s, t).
std::vector<milp::Row> build_energy_balance(const VarIndex& index, const PlanningInputs& inputs);

/// Fuel-cell output caps tied to the installed sets. PV and grid limits are
/// column bounds set by index_variables.
std::vector<milp::Row> build_device_bounds(const VarIndex& index, const PlanningInputs& inputs);

std::vector<milp::Row> build_bess_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                              const ModelConfig& config);
std::vector<milp::Row> build_tess_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                              const ModelConfig& config);
std::vector<milp::Row> build_ev_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                            const ModelConfig& config);

/// Shortfall definition, shortfall-to-Z link, and the cardinality row
/// sum_s Z(s) <= floor(N * zeta).
std::vector<milp::Row> build_chance_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                                const ModelConfig& config);

/// floor(N * zeta) with a small guard against representation error.
int substandard_limit(int scenarios, double zeta) noexcept;

}  // namespace hubplan::model
