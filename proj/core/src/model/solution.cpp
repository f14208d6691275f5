#include "hubplan/model/solution.hpp"

#include <limits>

namespace hubplan::model {

PlanSolution extract_solution(const AssembledModel& model, const std::vector<double>& x) {
  const VarIndex& idx = model.index;
  const Dims& d = idx.dims;
  if (static_cast<int>(x.size()) != idx.size()) {
    throw InvalidParameter("solution has " + std::to_string(x.size()) + " values for " +
                           std::to_string(idx.size()) + " columns");
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto val = [&](const VarKey& k) { return x[idx.at(k)]; };

  PlanSolution sol;
  sol.objective = model.milp.objective_value(x);
  sol.bess_capacity = val({VarKind::XEss});
  for (int i = 0; i < d.fuel_cells; ++i) sol.fc_units.push_back(val({VarKind::XFc, -1, -1, i}));

  sol.scenarios.resize(d.scenarios);
  for (int s = 0; s < d.scenarios; ++s) {
    ScenarioDispatch& sd = sol.scenarios[s];
    const auto n_t = static_cast<std::size_t>(d.hours);
    sd.grid.resize(n_t);
    sd.pv.resize(n_t);
    sd.fuel.assign(n_t, std::vector<double>(d.fuel_cells));
    sd.bess_ch.resize(n_t);
    sd.bess_dis.resize(n_t);
    sd.bess_energy.resize(n_t);
    sd.tess_ch.resize(n_t);
    sd.tess_dis.resize(n_t);
    sd.tess_energy.resize(n_t);
    for (int t = 0; t < d.hours; ++t) {
      sd.grid[t] = val({VarKind::Grid, s, t});
      sd.pv[t] = val({VarKind::Pv, s, t});
      for (int i = 0; i < d.fuel_cells; ++i) sd.fuel[t][i] = val({VarKind::Fuel, s, t, i});
      sd.bess_ch[t] = val({VarKind::BessCh, s, t});
      sd.bess_dis[t] = val({VarKind::BessDis, s, t});
      sd.bess_energy[t] = val({VarKind::BessE, s, t});
      sd.tess_ch[t] = val({VarKind::TessCh, s, t});
      sd.tess_dis[t] = val({VarKind::TessDis, s, t});
      sd.tess_energy[t] = val({VarKind::TessE, s, t});
    }
    sd.ev_ch.assign(d.evs, std::vector<double>(n_t, nan));
    sd.ev_dis.assign(d.evs, std::vector<double>(n_t, nan));
    sd.ev_energy.assign(d.evs, std::vector<double>(n_t, nan));
    sd.departure_energy.assign(d.evs, nan);
    sd.shortfall.assign(d.evs, 0.0);
    for (int j = 0; j < d.evs; ++j) {
      int last = -1;
      for (int t = 0; t < d.hours; ++t) {
        auto e = idx.find({VarKind::EvE, s, t, -1, j});
        if (!e) continue;
        sd.ev_energy[j][t] = x[*e];
        sd.ev_ch[j][t] = val({VarKind::EvCh, s, t, -1, j});
        sd.ev_dis[j][t] = val({VarKind::EvDis, s, t, -1, j});
        last = t;
      }
      if (last >= 0) sd.departure_energy[j] = sd.ev_energy[j][last];
      sd.shortfall[j] = val({VarKind::Shortfall, s, -1, -1, j});
    }
    sd.z = val({VarKind::Z, s});
  }
  return sol;
}

}  // namespace hubplan::model
