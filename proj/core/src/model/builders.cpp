#include "hubplan/model/builders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hubplan/core/types.hpp"

namespace hubplan::model {

namespace {

using milp::Row;
using milp::Sense;

std::string tag(const char* base, int s, int t = -1, int k = -1, char kname = 'i') {
  std::string n = std::string(base) + "_s" + std::to_string(s);
  if (t >= 0) n += "_t" + std::to_string(t);
  if (k >= 0) n += std::string("_") + kname + std::to_string(k);
  return n;
}

double big_m(const ModelConfig& config, double tight) {
  return config.global_big_m ? *config.global_big_m : tight;
}

/// ch <= M y and dis <= M (1 - y).
void exclusivity_rows(std::vector<Row>& rows, const std::string& name, int ch, int dis, int y, double m) {
  rows.push_back(Row{name + "_ych", Sense::LessEqual, 0.0, {{ch, 1.0}, {y, -m}}});
  rows.push_back(Row{name + "_ydis", Sense::LessEqual, m, {{dis, 1.0}, {y, m}}});
}

Row make_row(std::string name, Sense sense, double rhs, std::vector<milp::Entry> entries) {
  Row r{std::move(name), sense, rhs, std::move(entries)};
  std::erase_if(r.entries, [](const milp::Entry& e) { return e.value == 0.0; });
  std::stable_sort(r.entries.begin(), r.entries.end(),
                   [](const milp::Entry& a, const milp::Entry& b) { return a.col < b.col; });
  return r;
}

}  // namespace

int substandard_limit(int scenarios, double zeta) noexcept {
  return static_cast<int>(std::floor(scenarios * zeta + 1e-9));
}

std::vector<double> build_objective(const VarIndex& index, const PlanningInputs& inputs,
                                    const ModelConfig& config, double m) {
  const auto& cat = inputs.catalog;
  const auto& tar = inputs.tariffs;
  const Dims& d = index.dims;
  std::vector<double> c(static_cast<std::size_t>(index.size()), 0.0);
  const double scale = m / kCnyPerReportingUnit;

  c[index.at({VarKind::XEss})] = cat.bess.invest_cost;
  for (int i = 0; i < d.fuel_cells; ++i) c[index.at({VarKind::XFc, -1, -1, i})] = cat.fuel_cells[i].invest_cost;

  double penalty = scale * tar.soc_penalty;
  if (config.penalty_basis == PenaltyBasis::Soc && cat.ev.capacity > 0.0) penalty /= cat.ev.capacity;

  for (int s = 0; s < d.scenarios; ++s) {
    for (int t = 0; t < d.hours; ++t) {
      c[index.at({VarKind::Grid, s, t})] = scale * (tar.elec_price[t] + tar.carbon_tax * tar.grid_emission[t]);
      for (int i = 0; i < d.fuel_cells; ++i) {
        const auto& fc = cat.fuel_cells[i];
        c[index.at({VarKind::Fuel, s, t, i})] = scale * (fc.fuel_price + tar.carbon_tax * fc.fuel_emission);
      }
    }
    for (int j = 0; j < d.evs; ++j) c[index.at({VarKind::Shortfall, s, -1, -1, j})] = penalty;
  }
  return c;
}

std::vector<Row> build_energy_balance(const VarIndex& index, const PlanningInputs& inputs) {
  const auto& cat = inputs.catalog;
  const Dims& d = index.dims;
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(2 * d.scenarios * d.hours));
  for (int s = 0; s < d.scenarios; ++s) {
    const Scenario& sc = inputs.scenarios.scenarios[s];
    for (int t = 0; t < d.hours; ++t) {
      std::vector<milp::Entry> e;
      e.push_back({index.at({VarKind::Pv, s, t}), 1.0});
      for (int i = 0; i < d.fuel_cells; ++i) {
        e.push_back({index.at({VarKind::Fuel, s, t, i}), cat.fuel_cells[i].gas_to_elec});
      }
      e.push_back({index.at({VarKind::Grid, s, t}), 1.0});
      e.push_back({index.at({VarKind::BessCh, s, t}), -1.0 / cat.bess.eta_ch});
      e.push_back({index.at({VarKind::BessDis, s, t}), cat.bess.eta_dis});
      for (int j = 0; j < d.evs; ++j) {
        if (auto ch = index.find({VarKind::EvCh, s, t, -1, j})) {
          e.push_back({*ch, -1.0 / cat.ev.eta_ch});
          e.push_back({index.at({VarKind::EvDis, s, t, -1, j}), cat.ev.eta_dis});
        }
      }
      rows.push_back(make_row(tag("bal_e", s, t), Sense::Equal, sc.elec_load[t], std::move(e)));

      std::vector<milp::Entry> h;
      for (int i = 0; i < d.fuel_cells; ++i) {
        h.push_back({index.at({VarKind::Fuel, s, t, i}), cat.fuel_cells[i].gas_to_heat});
      }
      h.push_back({index.at({VarKind::TessCh, s, t}), -1.0 / cat.tess.eta_ch});
      h.push_back({index.at({VarKind::TessDis, s, t}), cat.tess.eta_dis});
      rows.push_back(make_row(tag("bal_h", s, t), Sense::GreaterEqual, sc.heat_load[t], std::move(h)));
    }
  }
  return rows;
}

std::vector<Row> build_device_bounds(const VarIndex& index, const PlanningInputs& inputs) {
  const auto& cat = inputs.catalog;
  const Dims& d = index.dims;
  std::vector<Row> rows;
  for (int s = 0; s < d.scenarios; ++s) {
    for (int t = 0; t < d.hours; ++t) {
      for (int i = 0; i < d.fuel_cells; ++i) {
        const auto& fc = cat.fuel_cells[i];
        const int fuel = index.at({VarKind::Fuel, s, t, i});
        const int units = index.at({VarKind::XFc, -1, -1, i});
        const std::string type(to_string(fc.id));
        if (fc.gas_to_elec > 0.0) {
          rows.push_back(make_row("fc_e_" + type + "_s" + std::to_string(s) + "_t" + std::to_string(t),
                                  Sense::LessEqual, 0.0, {{fuel, fc.gas_to_elec}, {units, -fc.max_elec}}));
        }
        if (fc.gas_to_heat > 0.0) {
          rows.push_back(make_row("fc_h_" + type + "_s" + std::to_string(s) + "_t" + std::to_string(t),
                                  Sense::LessEqual, 0.0, {{fuel, fc.gas_to_heat}, {units, -fc.max_heat}}));
        }
      }
    }
  }
  return rows;
}

std::vector<Row> build_bess_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                        const ModelConfig& config) {
  const auto& b = inputs.catalog.bess;
  const Dims& d = index.dims;
  const int x = index.at({VarKind::XEss});
  const double lifetime_coef = inputs.catalog.planning_years * 365.0;
  const double m = big_m(config, b.rate_fraction * b.max_capacity);
  std::vector<Row> rows;
  for (int s = 0; s < d.scenarios; ++s) {
    for (int t = 0; t < d.hours; ++t) {
      const int e = index.at({VarKind::BessE, s, t});
      const int ch = index.at({VarKind::BessCh, s, t});
      const int dis = index.at({VarKind::BessDis, s, t});
      rows.push_back(make_row(tag("bess_smin", s, t), Sense::GreaterEqual, 0.0, {{e, 1.0}, {x, -b.soc_min}}));
      rows.push_back(make_row(tag("bess_smax", s, t), Sense::LessEqual, 0.0, {{e, 1.0}, {x, -b.soc_max}}));
      rows.push_back(make_row(tag("bess_chr", s, t), Sense::LessEqual, 0.0, {{ch, 1.0}, {x, -b.rate_fraction}}));
      rows.push_back(make_row(tag("bess_disr", s, t), Sense::LessEqual, 0.0, {{dis, 1.0}, {x, -b.rate_fraction}}));
      if (config.mode == ExclusivityMode::Binary) {
        exclusivity_rows(rows, tag("bess", s, t), ch, dis, index.at({VarKind::YBess, s, t}), m);
      }
    }
    for (int t = 1; t < d.hours; ++t) {
      rows.push_back(make_row(tag("bess_dyn", s, t), Sense::Equal, 0.0,
                              {{index.at({VarKind::BessE, s, t}), 1.0},
                               {index.at({VarKind::BessE, s, t - 1}), -1.0},
                               {index.at({VarKind::BessCh, s, t - 1}), -1.0},
                               {index.at({VarKind::BessDis, s, t - 1}), 1.0}}));
    }
    if (d.hours > 1) {
      rows.push_back(make_row(tag("bess_cyc", s), Sense::Equal, 0.0,
                              {{index.at({VarKind::BessE, s, 0}), 1.0},
                               {index.at({VarKind::BessE, s, d.hours - 1}), -1.0}}));
    }
    std::vector<milp::Entry> life;
    for (int t = 0; t < d.hours; ++t) life.push_back({index.at({VarKind::BessCh, s, t}), lifetime_coef});
    life.push_back({x, -b.lifetime_cycles});
    rows.push_back(make_row(tag("bess_life", s), Sense::LessEqual, 0.0, std::move(life)));
  }
  return rows;
}

std::vector<Row> build_tess_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                        const ModelConfig& config) {
  const Dims& d = index.dims;
  const double m = big_m(config, inputs.catalog.tess.rate_cap());
  std::vector<Row> rows;
  for (int s = 0; s < d.scenarios; ++s) {
    if (config.mode == ExclusivityMode::Binary) {
      for (int t = 0; t < d.hours; ++t) {
        exclusivity_rows(rows, tag("tess", s, t), index.at({VarKind::TessCh, s, t}),
                         index.at({VarKind::TessDis, s, t}), index.at({VarKind::YTess, s, t}), m);
      }
    }
    for (int t = 1; t < d.hours; ++t) {
      rows.push_back(make_row(tag("tess_dyn", s, t), Sense::Equal, 0.0,
                              {{index.at({VarKind::TessE, s, t}), 1.0},
                               {index.at({VarKind::TessE, s, t - 1}), -1.0},
                               {index.at({VarKind::TessCh, s, t - 1}), -1.0},
                               {index.at({VarKind::TessDis, s, t - 1}), 1.0}}));
    }
    if (d.hours > 1) {
      rows.push_back(make_row(tag("tess_cyc", s), Sense::Equal, 0.0,
                              {{index.at({VarKind::TessE, s, 0}), 1.0},
                               {index.at({VarKind::TessE, s, d.hours - 1}), -1.0}}));
    }
  }
  return rows;
}

std::vector<Row> build_ev_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                      const ModelConfig& config) {
  const auto& ev = inputs.catalog.ev;
  const Dims& d = index.dims;
  const double m_ch = big_m(config, ev.charger_power);
  const double m_dis = big_m(config, ev.discharge_cap());
  std::vector<Row> rows;
  for (int s = 0; s < d.scenarios; ++s) {
    const Scenario& sc = inputs.scenarios.scenarios[s];
    for (int j = 0; j < d.evs; ++j) {
      const EvRecord& r = sc.ev[j];
      for (int t = r.arrive_hour; t < r.depart_hour; ++t) {
        const int e = index.at({VarKind::EvE, s, t, -1, j});
        const int ch = index.at({VarKind::EvCh, s, t, -1, j});
        const int dis = index.at({VarKind::EvDis, s, t, -1, j});
        // E(t) is the energy at the end of hour t; the arrival hour starts
        // from the recorded state of charge.
        if (t == r.arrive_hour) {
          rows.push_back(make_row(tag("ev_dyn", s, t, j, 'j'), Sense::Equal, r.initial_soc * ev.capacity,
                                  {{e, 1.0}, {ch, -1.0}, {dis, 1.0}}));
        } else {
          rows.push_back(make_row(tag("ev_dyn", s, t, j, 'j'), Sense::Equal, 0.0,
                                  {{e, 1.0}, {index.at({VarKind::EvE, s, t - 1, -1, j}), -1.0}, {ch, -1.0}, {dis, 1.0}}));
        }
        if (config.mode == ExclusivityMode::Binary) {
          const int y = index.at({VarKind::YEv, s, t, -1, j});
          const std::string name = tag("ev", s, t, j, 'j');
          rows.push_back(make_row(name + "_ych", Sense::LessEqual, 0.0, {{ch, 1.0}, {y, -m_ch}}));
          rows.push_back(make_row(name + "_ydis", Sense::LessEqual, m_dis, {{dis, 1.0}, {y, m_dis}}));
        }
      }
    }
  }
  return rows;
}

std::vector<Row> build_chance_constraints(const VarIndex& index, const PlanningInputs& inputs,
                                          const ModelConfig& config) {
  const auto& ev = inputs.catalog.ev;
  const Dims& d = index.dims;
  const double target = ev.target_departure_soc * ev.capacity;
  const double m_soc = big_m(config, (ev.target_departure_soc - ev.soc_min) * ev.capacity);
  std::vector<Row> rows;
  std::vector<milp::Entry> card;
  for (int s = 0; s < d.scenarios; ++s) {
    const Scenario& sc = inputs.scenarios.scenarios[s];
    const int z = index.at({VarKind::Z, s});
    for (int j = 0; j < d.evs; ++j) {
      const int short_col = index.at({VarKind::Shortfall, s, -1, -1, j});
      const int e_dep = index.at({VarKind::EvE, s, sc.ev[j].depart_hour - 1, -1, j});
      rows.push_back(make_row(tag("soc_short", s, -1, j, 'j'), Sense::GreaterEqual, target,
                              {{short_col, 1.0}, {e_dep, 1.0}}));
      rows.push_back(make_row(tag("soc_z", s, -1, j, 'j'), Sense::LessEqual, 0.0,
                              {{short_col, 1.0}, {z, -m_soc}}));
    }
    card.push_back({z, 1.0});
  }
  rows.push_back(make_row("chance_card", Sense::LessEqual,
                          substandard_limit(d.scenarios, config.zeta), std::move(card)));
  return rows;
}

}  // namespace hubplan::model
