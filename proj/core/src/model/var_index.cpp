#include "hubplan/model/var_index.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hubplan::model {

std::string_view to_string(ExclusivityMode m) noexcept {
  return m == ExclusivityMode::Binary ? "binary" : "relaxed";
}

std::optional<ExclusivityMode> parse_exclusivity_mode(std::string_view text) noexcept {
  if (text == "binary") return ExclusivityMode::Binary;
  if (text == "relaxed") return ExclusivityMode::Relaxed;
  return std::nullopt;
}

void ModelConfig::validate() const {
  if (!(zeta >= 0.0 && zeta < 1.0)) {
    throw InvalidParameter("zeta must lie in [0, 1), got " + std::to_string(zeta));
  }
  if (global_big_m && !(*global_big_m > 0.0)) {
    throw InvalidParameter("big-M must be positive");
  }
}

std::string_view to_string(VarKind k) noexcept {
  switch (k) {
    case VarKind::XEss: return "X_ESS";
    case VarKind::XFc: return "X_FC";
    case VarKind::Grid: return "P_grid";
    case VarKind::Fuel: return "P_fuel";
    case VarKind::Pv: return "P_pv";
    case VarKind::BessCh: return "P_bess_ch";
    case VarKind::BessDis: return "P_bess_dis";
    case VarKind::BessE: return "E_bess";
    case VarKind::TessCh: return "P_tess_ch";
    case VarKind::TessDis: return "P_tess_dis";
    case VarKind::TessE: return "E_tess";
    case VarKind::EvCh: return "P_ev_ch";
    case VarKind::EvDis: return "P_ev_dis";
    case VarKind::EvE: return "E_ev";
    case VarKind::Shortfall: return "d";
    case VarKind::YBess: return "Y_bess";
    case VarKind::YTess: return "Y_tess";
    case VarKind::YEv: return "Y_ev";
    case VarKind::Z: return "Z";
  }
  return "?";
}

std::string column_name(const VarKey& key, const EquipmentCatalog& catalog) {
  std::string name(to_string(key.kind));
  if (key.i >= 0) name += "_" + std::string(to_string(catalog.fuel_cells.at(key.i).id));
  if (key.s >= 0) name += "_s" + std::to_string(key.s);
  if (key.t >= 0) name += "_t" + std::to_string(key.t);
  if (key.j >= 0) name += "_j" + std::to_string(key.j);
  return name;
}

int VarIndex::add(const VarKey& key, milp::Column column) {
  const int id = size();
  if (!ids_.emplace(key, id).second) {
    throw InvalidParameter("duplicate variable key " + std::string(to_string(key.kind)));
  }
  keys_.push_back(key);
  columns_.push_back(std::move(column));
  return id;
}

std::optional<int> VarIndex::find(const VarKey& key) const {
  auto it = ids_.find(key);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

int VarIndex::at(const VarKey& key) const {
  auto it = ids_.find(key);
  if (it == ids_.end()) {
    throw LookupError("no variable " + std::string(to_string(key.kind)) + " at s=" + std::to_string(key.s) +
                      " t=" + std::to_string(key.t) + " i=" + std::to_string(key.i) +
                      " j=" + std::to_string(key.j));
  }
  return it->second;
}

int VarIndex::count(VarKind kind) const {
  return static_cast<int>(std::count_if(keys_.begin(), keys_.end(),
                                        [kind](const VarKey& k) { return k.kind == kind; }));
}

VarIndex index_variables(const PlanningInputs& inputs, const ModelConfig& config) {
  const EquipmentCatalog& cat = inputs.catalog;
  const ScenarioSet& set = inputs.scenarios;
  const int n_s = static_cast<int>(set.scenarios.size());
  const int n_t = set.grid.hours_per_day;
  const int n_fc = static_cast<int>(cat.fuel_cells.size());
  const bool binary = config.mode == ExclusivityMode::Binary;

  VarIndex idx;
  idx.dims = Dims{n_s, n_t, n_fc, cat.ev.n_ev};
  if (config.fixed_first_stage && static_cast<int>(config.fixed_first_stage->fc_units.size()) != n_fc) {
    throw ModelError("fixed plan lists " + std::to_string(config.fixed_first_stage->fc_units.size()) +
                     " fuel-cell counts for " + std::to_string(n_fc) + " types");
  }

  auto add = [&](VarKey key, double lo, double hi, milp::ColumnKind kind = milp::ColumnKind::Continuous) {
    return idx.add(key, milp::Column{column_name(key, cat), lo, hi, 0.0, kind});
  };

  const double bess_rate_cap = cat.bess.rate_fraction * cat.bess.max_capacity;
  const double tess_rate_cap = cat.tess.rate_cap();
  const auto& ev = cat.ev;
  const double target_energy = ev.target_departure_soc * ev.capacity;
  const double max_shortfall = std::max(0.0, (ev.target_departure_soc - ev.soc_min) * ev.capacity);

  if (config.fixed_first_stage) {
    const double cap = config.fixed_first_stage->bess_capacity;
    add({VarKind::XEss}, cap, cap);
  } else {
    add({VarKind::XEss}, 0.0, cat.bess.max_capacity);
  }
  for (int i = 0; i < n_fc; ++i) {
    const double hi = config.fixed_first_stage ? config.fixed_first_stage->fc_units[i]
                                               : static_cast<double>(cat.fuel_cells[i].max_units);
    const double lo = config.fixed_first_stage ? hi : 0.0;
    add({VarKind::XFc, -1, -1, i}, lo, hi, milp::ColumnKind::Integer);
  }

  for (int s = 0; s < n_s; ++s) {
    const Scenario& sc = set.scenarios[s];
    for (int t = 0; t < n_t; ++t) {
      // Storage flows in the final hour would never reach a stored energy
      // level under the cyclic condition, so they are fixed to zero.
      const bool last = t == n_t - 1;
      add({VarKind::Grid, s, t}, 0.0, inputs.tariffs.grid_cap);
      for (int i = 0; i < n_fc; ++i) {
        const auto& fc = cat.fuel_cells[i];
        add({VarKind::Fuel, s, t, i}, 0.0, fc.max_units * fc.max_fuel_per_unit());
      }
      add({VarKind::Pv, s, t}, 0.0, std::clamp(sc.pv_avail[t], 0.0, inputs.tariffs.pv_cap));
      add({VarKind::BessCh, s, t}, 0.0, last ? 0.0 : bess_rate_cap);
      add({VarKind::BessDis, s, t}, 0.0, last ? 0.0 : bess_rate_cap);
      add({VarKind::BessE, s, t}, 0.0, cat.bess.soc_max * cat.bess.max_capacity);
      add({VarKind::TessCh, s, t}, 0.0, last ? 0.0 : tess_rate_cap);
      add({VarKind::TessDis, s, t}, 0.0, last ? 0.0 : tess_rate_cap);
      add({VarKind::TessE, s, t}, 0.0, cat.tess.capacity);
      if (binary) {
        add({VarKind::YBess, s, t}, 0.0, 1.0, milp::ColumnKind::Binary);
        add({VarKind::YTess, s, t}, 0.0, 1.0, milp::ColumnKind::Binary);
      }
    }
    if (static_cast<int>(sc.ev.size()) != ev.n_ev) {
      throw ModelError("scenario " + std::to_string(s) + " has " + std::to_string(sc.ev.size()) +
                       " vehicles, fleet has " + std::to_string(ev.n_ev));
    }
    for (int j = 0; j < ev.n_ev; ++j) {
      const EvRecord& r = sc.ev[j];
      if (r.arrive_hour < 0 || r.depart_hour > n_t || r.depart_hour <= r.arrive_hour) {
        throw ModelError("scenario " + std::to_string(s) + " vehicle " + std::to_string(j) +
                         ": parking window [" + std::to_string(r.arrive_hour) + ", " +
                         std::to_string(r.depart_hour) + ") lies outside [0, " + std::to_string(n_t) + "]");
      }
      for (int t = r.arrive_hour; t < r.depart_hour; ++t) {
        add({VarKind::EvCh, s, t, -1, j}, 0.0, ev.charger_power);
        add({VarKind::EvDis, s, t, -1, j}, 0.0, ev.discharge_cap());
        add({VarKind::EvE, s, t, -1, j}, ev.soc_min * ev.capacity, ev.soc_max * ev.capacity);
        if (binary) add({VarKind::YEv, s, t, -1, j}, 0.0, 1.0, milp::ColumnKind::Binary);
      }
      add({VarKind::Shortfall, s, -1, -1, j}, 0.0, std::min(max_shortfall, target_energy));
    }
    add({VarKind::Z, s}, 0.0, ev.n_ev > 0 ? 1.0 : 0.0, milp::ColumnKind::Binary);
  }
  return idx;
}

}  // namespace hubplan::model
