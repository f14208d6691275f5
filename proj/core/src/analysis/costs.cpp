#include "hubplan/analysis/costs.hpp"

#include <algorithm>
#include <cmath>

namespace hubplan::analysis {

double CostBreakdown::sum_of_parts() const noexcept {
  return fc_investment + bess_investment + gas_cost + grid_cost + carbon_from_elec + carbon_from_gas +
         soc_penalty;
}

InfeasibleSolution::InfeasibleSolution(VerifyReport report)
    : Error("solution fails verification: " +
            (report.violations.empty() ? std::string("unknown") : report.violations.front()) +
            (report.violations.size() > 1 ? " (and " + std::to_string(report.violations.size() - 1) + " more)"
                                          : std::string())),
      report_(std::move(report)) {}

CostBreakdown investment_costs(const EquipmentCatalog& catalog, double bess_capacity,
                               const std::vector<double>& fc_units) {
  if (fc_units.size() != catalog.fuel_cells.size()) {
    throw InvalidParameter("plan lists " + std::to_string(fc_units.size()) + " fuel-cell counts for " +
                           std::to_string(catalog.fuel_cells.size()) + " types");
  }
  CostBreakdown c;
  for (std::size_t i = 0; i < fc_units.size(); ++i) c.fc_investment += fc_units[i] * catalog.fuel_cells[i].invest_cost;
  c.bess_investment = bess_capacity * catalog.bess.invest_cost;
  c.total = c.sum_of_parts();
  return c;
}

CostBreakdown cost_breakdown(const model::PlanSolution& plan, const PlanningInputs& inputs, double zeta,
                             double m) {
  VerifyReport report = verify_plan(inputs, plan, zeta);
  if (!report.ok()) throw InfeasibleSolution(std::move(report));

  const auto& cat = inputs.catalog;
  const auto& tar = inputs.tariffs;
  CostBreakdown c = investment_costs(cat, plan.bess_capacity, plan.fc_units);
  const double scale = m / kCnyPerReportingUnit;
  const double target = cat.ev.target_departure_soc * cat.ev.capacity;

  double gas = 0.0;
  double grid = 0.0;
  double co2_gas = 0.0;
  double co2_grid = 0.0;
  double shortfall = 0.0;
  for (const auto& d : plan.scenarios) {
    for (std::size_t t = 0; t < d.grid.size(); ++t) {
      // Solver noise can leave values a hair below zero; costs use the clamp.
      const double g = std::max(0.0, d.grid[t]);
      grid += g * tar.elec_price[t];
      co2_grid += g * tar.grid_emission[t];
      for (std::size_t i = 0; i < cat.fuel_cells.size(); ++i) {
        const double f = std::max(0.0, d.fuel[t][i]);
        gas += f * cat.fuel_cells[i].fuel_price;
        co2_gas += f * cat.fuel_cells[i].fuel_emission;
      }
    }
    for (double e : d.departure_energy) {
      if (!std::isnan(e)) shortfall += std::max(0.0, target - e);
    }
  }
  c.gas_cost = scale * gas;
  c.grid_cost = scale * grid;
  c.carbon_from_elec = scale * tar.carbon_tax * co2_grid;
  c.carbon_from_gas = scale * tar.carbon_tax * co2_gas;
  c.soc_penalty = scale * tar.soc_penalty * shortfall;
  c.total = c.sum_of_parts();
  return c;
}

}  // namespace hubplan::analysis
