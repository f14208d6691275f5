#include "hubplan/model/solve.hpp"

#include <cmath>
#include <utility>

#include "hubplan/milp/check.hpp"
#include "hubplan/milp/lp.hpp"
#include "hubplan/model/builders.hpp"

namespace hubplan::model {

namespace {

// PV curtailment and the heat inequality give the model free disposal, so a
// relaxed-mode optimum may burn surplus energy by charging and discharging a
// store in the same hour. Lowering both flows by their minimum leaves the
// energy trajectory untouched and frees min * (1/eta_ch - eta_dis) on the bus,
// which is taken back from PV, then grid import. Heat surplus is left in place.
void net_simultaneous_flows(const AssembledModel& m, const PlanningInputs& in, std::vector<double>& x) {
  const VarIndex& index = m.index;
  const Dims& d = index.dims;
  auto net = [&](int ch, int dis, double eta_ch, double eta_dis, bool electric, int s, int t) {
    double delta = std::min(x[ch], x[dis]);
    if (delta <= 0.0) return;
    const double gain = 1.0 / eta_ch - eta_dis;
    int pv = -1, grid = -1;
    if (electric && gain > 0.0) {
      pv = index.at({VarKind::Pv, s, t});
      grid = index.at({VarKind::Grid, s, t});
      delta = std::min(delta, (x[pv] + x[grid]) / gain);
    }
    x[ch] -= delta;
    x[dis] -= delta;
    if (pv < 0) return;
    double spare = delta * gain;
    const double from_pv = std::min(spare, x[pv]);
    x[pv] -= from_pv;
    spare -= from_pv;
    x[grid] = std::max(0.0, x[grid] - spare);
  };
  const auto& cat = in.catalog;
  for (int s = 0; s < d.scenarios; ++s) {
    for (int t = 0; t < d.hours; ++t) {
      net(index.at({VarKind::BessCh, s, t}), index.at({VarKind::BessDis, s, t}), cat.bess.eta_ch, cat.bess.eta_dis,
          true, s, t);
      net(index.at({VarKind::TessCh, s, t}), index.at({VarKind::TessDis, s, t}), cat.tess.eta_ch, cat.tess.eta_dis,
          false, s, t);
      for (int j = 0; j < d.evs; ++j) {
        const auto ch = index.find({VarKind::EvCh, s, t, -1, j});
        if (ch) net(*ch, index.at({VarKind::EvDis, s, t, -1, j}), cat.ev.eta_ch, cat.ev.eta_dis, true, s, t);
      }
    }
  }
}

std::vector<std::pair<int, int>> simultaneous_pairs(const VarIndex& index, const std::vector<double>& x) {
  constexpr double tol = 1e-9;
  std::vector<std::pair<int, int>> out;
  auto add = [&](int ch, int dis) {
    if (x[ch] > tol && x[dis] > tol) out.emplace_back(ch, dis);
  };
  const Dims& d = index.dims;
  for (int s = 0; s < d.scenarios; ++s) {
    for (int t = 0; t < d.hours; ++t) {
      add(index.at({VarKind::BessCh, s, t}), index.at({VarKind::BessDis, s, t}));
      add(index.at({VarKind::TessCh, s, t}), index.at({VarKind::TessDis, s, t}));
      for (int j = 0; j < d.evs; ++j) {
        if (const auto ch = index.find({VarKind::EvCh, s, t, -1, j})) add(*ch, index.at({VarKind::EvDis, s, t, -1, j}));
      }
    }
  }
  return out;
}

// Moves a relaxed-mode optimum to an equally cheap one without same-hour
// charge and discharge where possible. Netting handles pairs whose freed energy
// can be curtailed. Pairs that remain are dissipating surplus the plan cannot
// otherwise shed, so the smaller flow is bounded to zero and the dispatch LP
// re-solved with the first stage fixed; the result is kept only if the cost
// does not rise.
void exclusive_dispatch(PlanResult& out, const PlanningInputs& in, milp::MilpModel fixed, const milp::LpOptions& lp,
                        std::vector<double>& x) {
  const double slack = 1e-9 * std::max(1.0, std::abs(out.bnb.objective));
  auto accept_netted = [&](std::vector<double> cand) {
    net_simultaneous_flows(out.model, in, cand);
    const double obj = out.model.milp.objective_value(cand);
    if (obj <= out.bnb.objective + slack && milp::check_solution(out.model.milp, cand).ok()) {
      x = std::move(cand);
      out.bnb.objective = obj;
    }
  };
  accept_netted(x);
  for (int round = 0; round < 8; ++round) {
    const auto pairs = simultaneous_pairs(out.model.index, x);
    if (pairs.empty()) break;
    for (const auto& [ch, dis] : pairs) fixed.columns[x[ch] < x[dis] ? ch : dis].upper = 0.0;
    const milp::LpSolution sol = milp::solve_lp(fixed, lp);
    if (sol.status != milp::LpStatus::Optimal || sol.objective > out.bnb.objective + slack) break;
    out.bnb.objective = sol.objective;
    x = sol.x;
    accept_netted(x);
  }
  out.bnb.x = x;
}

}  // namespace

PlanResult solve_plan(const PlanningInputs& inputs, const ModelConfig& config,
                      const milp::BnbOptions& options) {
  PlanResult out{assemble_model(inputs, config), {}, std::nullopt};
  out.bnb = milp::branch_and_bound(out.model.milp, options);
  if (!out.bnb.has_incumbent) return out;

  std::vector<double> x = out.bnb.x;
  milp::MilpModel fixed = out.model.milp;
  for (int j = 0; j < fixed.num_cols(); ++j) {
    auto& c = fixed.columns[j];
    if (!c.is_integer()) continue;
    const double v = std::round(x[j]) + 0.0;  // no negative zero
    c.lower = v;
    c.upper = v;
    c.kind = milp::ColumnKind::Continuous;
  }
  const milp::LpSolution lp = milp::solve_lp(fixed, options.lp);
  if (lp.status == milp::LpStatus::Optimal &&
      lp.objective <= out.bnb.objective + 1e-7 * std::max(1.0, std::abs(out.bnb.objective))) {
    x = lp.x;
    out.bnb.objective = lp.objective;
    out.bnb.x = x;
  }
  if (config.mode == ExclusivityMode::Relaxed) exclusive_dispatch(out, inputs, fixed, options.lp, x);
  out.solution = extract_solution(out.model, x);
  return out;
}

std::string diagnose_infeasibility(const PlanningInputs& inputs, const ModelConfig& config) {
  const VarIndex index = index_variables(inputs, config);
  milp::MilpModel m;
  m.columns = index.columns();
  auto feasible_with = [&](std::vector<milp::Row> rows) {
    for (auto& r : rows) m.rows.push_back(std::move(r));
    return milp::solve_lp(m).status != milp::LpStatus::Infeasible;
  };
  auto energy = build_energy_balance(index, inputs);
  auto devices = build_device_bounds(index, inputs);
  energy.insert(energy.end(), devices.begin(), devices.end());
  if (!feasible_with(std::move(energy))) return "energy balance and device limits";
  if (!feasible_with(build_bess_constraints(index, inputs, config))) return "battery storage";
  if (!feasible_with(build_tess_constraints(index, inputs, config))) return "thermal storage";
  if (!feasible_with(build_ev_constraints(index, inputs, config))) return "EV charging";
  if (!feasible_with(build_chance_constraints(index, inputs, config))) return "EV departure chance constraint";
  return "integrality";
}

}  // namespace hubplan::model
