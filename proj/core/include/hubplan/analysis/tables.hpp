#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hubplan/analysis/costs.hpp"
#include "hubplan/core/types.hpp"
#include "hubplan/model/solution.hpp"

namespace hubplan::analysis {

/// Hourly dispatch of one scenario as CSV: loads, price, grid, PV, per fuel
/// cell electric and heat output, storage flows and energy, EV flows and SOC.
/// Throws LookupError for an unknown scenario.
void write_dispatch_csv(std::ostream& out, const model::PlanSolution& plan, const PlanningInputs& inputs,
                        int scenario);

/// Hourly state of charge of BESS, TESS and every vehicle (empty when not parked).
void write_soc_csv(std::ostream& out, const model::PlanSolution& plan, const PlanningInputs& inputs,
                   int scenario);

enum class ExtremeKind { Elec, Heat };

/// Scenario with the largest daily electric or heat load; ties go to the lowest id.
int extreme_scenario(const ScenarioSet& set, ExtremeKind kind);

struct SummaryRow {
  double carbon_tax = 0.0;
  std::vector<double> fc_units;
  double bess_capacity = 0.0;
  int substandard = 0;
  CostBreakdown costs;
  bool ok = true;
  std::string status;
};

/// Planning summary: one row per carbon tax with the investment plan.
void write_plan_summary_csv(std::ostream& out, const EquipmentCatalog& catalog,
                            const std::vector<SummaryRow>& rows);
/// Cost breakdown: one row per carbon tax with every cost component.
void write_cost_breakdown_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace hubplan::analysis
