#include "hubplan/model/assemble.hpp"

#include "hubplan/core/finance.hpp"
#include "hubplan/model/builders.hpp"

namespace hubplan::model {

AssembledModel assemble_model(const PlanningInputs& inputs, const ModelConfig& config) {
  config.validate();
  AssembledModel out;
  out.index = index_variables(inputs, config);

  TimeGrid grid = inputs.scenarios.grid;
  grid.n_scenarios = static_cast<int>(inputs.scenarios.scenarios.size());
  grid.planning_years = inputs.catalog.planning_years;
  grid.discount_rate = inputs.catalog.discount_rate;
  out.annualization = annualization_factor(grid);

  const auto costs = build_objective(out.index, inputs, config, out.annualization);
  out.milp.columns = out.index.columns();
  for (std::size_t j = 0; j < costs.size(); ++j) out.milp.columns[j].cost = costs[j];

  auto append = [&](std::vector<milp::Row> rows) {
    for (auto& r : rows) out.milp.rows.push_back(std::move(r));
  };
  append(build_energy_balance(out.index, inputs));
  append(build_device_bounds(out.index, inputs));
  append(build_bess_constraints(out.index, inputs, config));
  append(build_tess_constraints(out.index, inputs, config));
  append(build_ev_constraints(out.index, inputs, config));
  append(build_chance_constraints(out.index, inputs, config));
  return out;
}

}  // namespace hubplan::model
