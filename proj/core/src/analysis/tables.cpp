#include "hubplan/analysis/tables.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "hubplan/core/io.hpp"

namespace hubplan::analysis {

namespace {

std::string num(double v) { return std::isnan(v) ? std::string() : format_double(v); }

void check_scenario(const model::PlanSolution& plan, int scenario) {
  if (scenario < 0 || scenario >= static_cast<int>(plan.scenarios.size())) {
    throw LookupError("no scenario " + std::to_string(scenario) + " (plan has " +
                      std::to_string(plan.scenarios.size()) + ")");
  }
}

}  // namespace

void write_dispatch_csv(std::ostream& out, const model::PlanSolution& plan, const PlanningInputs& inputs,
                        int scenario) {
  check_scenario(plan, scenario);
  const auto& cat = inputs.catalog;
  const auto& d = plan.scenarios[scenario];
  const auto& sc = inputs.scenarios.scenarios.at(scenario);
  out << "hour,elec_load_kw,heat_load_kw,elec_price,grid_kw,pv_kw";
  for (const auto& fc : cat.fuel_cells) {
    const std::string n(to_string(fc.id));
    out << ",fc_" << n << "_elec_kw,fc_" << n << "_heat_kw";
  }
  out << ",bess_ch_kw,bess_dis_kw,bess_energy_kwh,tess_ch_kw,tess_dis_kw,tess_energy_kwh";
  for (std::size_t j = 0; j < d.ev_ch.size(); ++j) out << ",ev" << j << "_ch_kw,ev" << j << "_dis_kw,ev" << j << "_soc";
  out << '\n';
  for (std::size_t t = 0; t < d.grid.size(); ++t) {
    out << t << ',' << num(sc.elec_load[t]) << ',' << num(sc.heat_load[t]) << ','
        << num(inputs.tariffs.elec_price[t]) << ',' << num(d.grid[t]) << ',' << num(d.pv[t]);
    for (std::size_t i = 0; i < cat.fuel_cells.size(); ++i) {
      out << ',' << num(cat.fuel_cells[i].gas_to_elec * d.fuel[t][i]) << ','
          << num(cat.fuel_cells[i].gas_to_heat * d.fuel[t][i]);
    }
    out << ',' << num(d.bess_ch[t]) << ',' << num(d.bess_dis[t]) << ',' << num(d.bess_energy[t]) << ','
        << num(d.tess_ch[t]) << ',' << num(d.tess_dis[t]) << ',' << num(d.tess_energy[t]);
    for (std::size_t j = 0; j < d.ev_ch.size(); ++j) {
      out << ',' << num(d.ev_ch[j][t]) << ',' << num(d.ev_dis[j][t]) << ','
          << num(d.ev_energy[j][t] / cat.ev.capacity);
    }
    out << '\n';
  }
}

void write_soc_csv(std::ostream& out, const model::PlanSolution& plan, const PlanningInputs& inputs,
                   int scenario) {
  check_scenario(plan, scenario);
  const auto& cat = inputs.catalog;
  const auto& d = plan.scenarios[scenario];
  out << "hour,bess_soc,tess_soc";
  for (std::size_t j = 0; j < d.ev_energy.size(); ++j) out << ",ev" << j << "_soc";
  out << '\n';
  for (std::size_t t = 0; t < d.grid.size(); ++t) {
    const double bess = plan.bess_capacity > 0.0 ? d.bess_energy[t] / plan.bess_capacity : std::nan("");
    const double tess = cat.tess.capacity > 0.0 ? d.tess_energy[t] / cat.tess.capacity : std::nan("");
    out << t << ',' << num(bess) << ',' << num(tess);
    for (const auto& e : d.ev_energy) out << ',' << num(e[t] / cat.ev.capacity);
    out << '\n';
  }
}

int extreme_scenario(const ScenarioSet& set, ExtremeKind kind) {
  if (set.scenarios.empty()) throw LookupError("scenario set is empty");
  int best = 0;
  double best_sum = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < set.scenarios.size(); ++s) {
    const auto& series = kind == ExtremeKind::Elec ? set.scenarios[s].elec_load : set.scenarios[s].heat_load;
    const double sum = std::accumulate(series.begin(), series.end(), 0.0);
    if (sum > best_sum) {
      best_sum = sum;
      best = static_cast<int>(s);
    }
  }
  return best;
}

void write_plan_summary_csv(std::ostream& out, const EquipmentCatalog& catalog,
                            const std::vector<SummaryRow>& rows) {
  out << "carbon_tax";
  for (const auto& fc : catalog.fuel_cells) out << ',' << to_string(fc.id) << "_sets";
  out << ",bess_kwh,substandard_scenarios,status\n";
  for (const auto& r : rows) {
    out << num(r.carbon_tax);
    for (std::size_t i = 0; i < catalog.fuel_cells.size(); ++i) {
      out << ',' << (r.ok && i < r.fc_units.size() ? num(r.fc_units[i]) : std::string());
    }
    if (r.ok) {
      out << ',' << num(r.bess_capacity) << ',' << r.substandard;
    } else {
      out << ",,";
    }
    out << ',' << r.status << '\n';
  }
}

void write_cost_breakdown_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "carbon_tax,fc_investment,bess_investment,gas_cost,grid_cost,carbon_from_elec,carbon_from_gas,"
         "soc_penalty,total\n";
  for (const auto& r : rows) {
    out << num(r.carbon_tax);
    if (r.ok) {
      const auto& c = r.costs;
      for (double v : {c.fc_investment, c.bess_investment, c.gas_cost, c.grid_cost, c.carbon_from_elec,
                       c.carbon_from_gas, c.soc_penalty, c.total}) {
        out << ',' << num(v);
      }
    } else {
      out << ",,,,,,,,";
    }
    out << '\n';
  }
}

}  // namespace hubplan::analysis
