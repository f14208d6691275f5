#include "hubplan/analysis/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hubplan/analysis/audit.hpp"

namespace hubplan::analysis {

namespace {

class Checker {
 public:
  Checker(VerifyReport& r, const VerifyOptions& o) : report_(r), opt_(o) {}

  void bound(const std::string& what, double v, double lo, double hi) {
    const double tol = opt_.bound_tol * (1.0 + std::max(std::abs(lo), std::abs(hi == kHuge ? lo : hi)));
    double excess = 0.0;
    if (!std::isfinite(v)) {
      fail(what + " is not finite");
      return;
    }
    if (v < lo) excess = lo - v;
    if (v > hi) excess = std::max(excess, v - hi);
    report_.max_bound_violation = std::max(report_.max_bound_violation, excess);
    if (excess > tol) {
      std::ostringstream os;
      os << what << " = " << v << " outside [" << lo << ", " << hi << "]";
      fail(os.str());
    }
  }

  /// Storage residual in state-of-charge units.
  void storage(const std::string& what, double residual, double capacity) {
    const double r = std::abs(residual) / std::max(1.0, capacity);
    report_.max_storage_residual = std::max(report_.max_storage_residual, r);
    if (r > opt_.storage_tol) {
      std::ostringstream os;
      os << what << " residual " << residual;
      fail(os.str());
    }
  }

  void fail(std::string msg) { report_.violations.push_back(std::move(msg)); }

  static constexpr double kHuge = 1e300;

 private:
  VerifyReport& report_;
  const VerifyOptions& opt_;
};

std::string at(const char* what, int s, int t, int k = -1) {
  std::string n = std::string(what) + " s" + std::to_string(s) + " t" + std::to_string(t);
  if (k >= 0) n += " #" + std::to_string(k);
  return n;
}

}  // namespace

VerifyReport verify_plan(const PlanningInputs& inputs, const model::PlanSolution& plan, double zeta,
                         const VerifyOptions& options) {
  VerifyReport rep;
  Checker chk(rep, options);
  const auto& cat = inputs.catalog;
  const auto& tar = inputs.tariffs;
  const auto& set = inputs.scenarios;
  const int n_s = static_cast<int>(set.scenarios.size());
  const int n_t = set.grid.hours_per_day;
  const int n_fc = static_cast<int>(cat.fuel_cells.size());
  const int n_ev = cat.ev.n_ev;
  rep.min_heat_surplus = std::numeric_limits<double>::infinity();

  if (static_cast<int>(plan.scenarios.size()) != n_s || static_cast<int>(plan.fc_units.size()) != n_fc) {
    chk.fail("plan dimensions do not match the inputs");
    return rep;
  }

  const double x_ess = plan.bess_capacity;
  chk.bound("X_ESS", x_ess, 0.0, cat.bess.max_capacity);
  for (int i = 0; i < n_fc; ++i) {
    const double u = plan.fc_units[i];
    const std::string name = "X_FC " + std::string(to_string(cat.fuel_cells[i].id));
    chk.bound(name, u, 0.0, cat.fuel_cells[i].max_units);
    const double frac = std::abs(u - std::round(u));
    rep.max_integrality = std::max(rep.max_integrality, frac);
    if (frac > options.int_tol) chk.fail(name + " is not integral");
  }

  double max_load = 0.0;
  for (const auto& sc : set.scenarios) {
    for (double v : sc.elec_load) max_load = std::max(max_load, std::abs(v));
  }
  const double elec_tol = options.balance_tol * (1.0 + max_load);

  const auto& b = cat.bess;
  const auto& th = cat.tess;
  const auto& ev = cat.ev;
  for (int s = 0; s < n_s; ++s) {
    const Scenario& sc = set.scenarios[s];
    const model::ScenarioDispatch& d = plan.scenarios[s];
    for (int t = 0; t < n_t; ++t) {
      const bool last = t == n_t - 1;
      double elec = d.pv[t] + d.grid[t] - d.bess_ch[t] / b.eta_ch + b.eta_dis * d.bess_dis[t];
      double heat = -d.tess_ch[t] / th.eta_ch + th.eta_dis * d.tess_dis[t];
      for (int i = 0; i < n_fc; ++i) {
        const auto& fc = cat.fuel_cells[i];
        const double f = d.fuel[t][i];
        elec += fc.gas_to_elec * f;
        heat += fc.gas_to_heat * f;
        chk.bound(at("fuel", s, t, i), f, 0.0, Checker::kHuge);
        chk.bound(at("fc elec output", s, t, i), fc.gas_to_elec * f, 0.0, plan.fc_units[i] * fc.max_elec);
        chk.bound(at("fc heat output", s, t, i), fc.gas_to_heat * f, 0.0, plan.fc_units[i] * fc.max_heat);
      }
      for (int j = 0; j < n_ev; ++j) {
        if (std::isnan(d.ev_ch[j][t])) continue;
        elec += -d.ev_ch[j][t] / ev.eta_ch + ev.eta_dis * d.ev_dis[j][t];
      }
      const double res = std::abs(elec - sc.elec_load[t]);
      rep.max_elec_residual = std::max(rep.max_elec_residual, res);
      if (res > elec_tol) chk.fail(at("electric balance", s, t) + " residual " + std::to_string(res));
      const double surplus = heat - sc.heat_load[t];
      rep.min_heat_surplus = std::min(rep.min_heat_surplus, surplus);
      if (surplus < -options.heat_tol) chk.fail(at("heat balance", s, t) + " deficit " + std::to_string(-surplus));

      chk.bound(at("grid", s, t), d.grid[t], 0.0, tar.grid_cap);
      chk.bound(at("pv", s, t), d.pv[t], 0.0, std::min(std::max(sc.pv_avail[t], 0.0), tar.pv_cap));

      const double rate = b.rate_fraction * x_ess;
      chk.bound(at("bess energy", s, t), d.bess_energy[t], b.soc_min * x_ess, b.soc_max * x_ess);
      chk.bound(at("bess charge", s, t), d.bess_ch[t], 0.0, last ? 0.0 : rate);
      chk.bound(at("bess discharge", s, t), d.bess_dis[t], 0.0, last ? 0.0 : rate);
      chk.bound(at("tess energy", s, t), d.tess_energy[t], 0.0, th.capacity);
      chk.bound(at("tess charge", s, t), d.tess_ch[t], 0.0, last ? 0.0 : th.rate_cap());
      chk.bound(at("tess discharge", s, t), d.tess_dis[t], 0.0, last ? 0.0 : th.rate_cap());
      if (t > 0) {
        chk.storage(at("bess dynamics", s, t),
                    d.bess_energy[t] - d.bess_energy[t - 1] - d.bess_ch[t - 1] + d.bess_dis[t - 1], x_ess);
        chk.storage(at("tess dynamics", s, t),
                    d.tess_energy[t] - d.tess_energy[t - 1] - d.tess_ch[t - 1] + d.tess_dis[t - 1], th.capacity);
      }
    }
    if (n_t > 1) {
      chk.storage(at("bess cyclic", s, 0), d.bess_energy[0] - d.bess_energy[n_t - 1], x_ess);
      chk.storage(at("tess cyclic", s, 0), d.tess_energy[0] - d.tess_energy[n_t - 1], th.capacity);
    }
    double charged = 0.0;
    for (double v : d.bess_ch) charged += v;
    const double life = cat.planning_years * 365.0 * charged - b.lifetime_cycles * x_ess;
    if (life > options.bound_tol * (1.0 + b.lifetime_cycles * x_ess)) {
      chk.fail("bess lifetime s" + std::to_string(s) + " exceeded by " + std::to_string(life));
    }

    for (int j = 0; j < n_ev; ++j) {
      const EvRecord& r = sc.ev[j];
      for (int t = 0; t < n_t; ++t) {
        const bool parked = t >= r.arrive_hour && t < r.depart_hour;
        if (!parked) {
          if (!std::isnan(d.ev_ch[j][t])) chk.fail(at("ev flow outside parking", s, t, j));
          continue;
        }
        chk.bound(at("ev charge", s, t, j), d.ev_ch[j][t], 0.0, ev.charger_power);
        chk.bound(at("ev discharge", s, t, j), d.ev_dis[j][t], 0.0, ev.discharge_cap());
        chk.bound(at("ev energy", s, t, j), d.ev_energy[j][t], ev.soc_min * ev.capacity, ev.soc_max * ev.capacity);
        const double before = t == r.arrive_hour ? r.initial_soc * ev.capacity : d.ev_energy[j][t - 1];
        chk.storage(at("ev dynamics", s, t, j), d.ev_energy[j][t] - before - d.ev_ch[j][t] + d.ev_dis[j][t],
                    ev.capacity);
      }
    }
  }
  if (n_s == 0) rep.min_heat_surplus = 0.0;

  const ChanceAudit audit = chance_audit(plan, ev, zeta);
  rep.substandard = audit.count();
  rep.substandard_limit = audit.limit;
  if (!audit.pass) {
    chk.fail(std::to_string(audit.count()) + " substandard scenarios exceed the limit of " +
             std::to_string(audit.limit));
  }
  return rep;
}

nlohmann::json to_json(const VerifyReport& r) {
  return {{"ok", r.ok()},
          {"max_elec_residual", r.max_elec_residual},
          {"min_heat_surplus", r.min_heat_surplus},
          {"max_storage_residual", r.max_storage_residual},
          {"max_bound_violation", r.max_bound_violation},
          {"max_integrality", r.max_integrality},
          {"substandard", r.substandard},
          {"substandard_limit", r.substandard_limit},
          {"violations", r.violations}};
}

}  // namespace hubplan::analysis
