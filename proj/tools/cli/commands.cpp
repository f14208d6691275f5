#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

#include "hubplan/analysis/audit.hpp"
#include "hubplan/analysis/costs.hpp"
#include "hubplan/analysis/sweep.hpp"
#include "hubplan/analysis/tables.hpp"
#include "hubplan/analysis/verify.hpp"
#include "hubplan/core/error.hpp"
#include "hubplan/core/io.hpp"
#include "hubplan/core/validate.hpp"
#include "hubplan/milp/mps.hpp"
#include "hubplan/model/solve.hpp"

namespace hubplan::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Base {
  EquipmentCatalog catalog;
  TariffSet tariffs;
  TimeGrid grid;
};

Base load_base(const RunConfig& c) {
  require_path(c.catalog, "catalog");
  Base b;
  b.catalog = read_catalog(c.catalog);
  const fs::path tariff_path = c.tariffs.empty() ? c.catalog : c.tariffs;
  require_path(tariff_path, "tariff file");
  b.tariffs = read_tariffs(tariff_path);
  b.grid.planning_years = b.catalog.planning_years;
  b.grid.discount_rate = b.catalog.discount_rate;
  b.grid.hours_per_day = static_cast<int>(b.tariffs.elec_price.size());
  return b;
}

ScenarioSet read_dir(const fs::path& dir, const TimeGrid& grid, const char* what) {
  require_path(dir, what);
  const fs::path series = dir / kSeriesFileName;
  const fs::path ev = dir / kEvFileName;
  require_path(series, what);
  require_path(ev, what);
  return read_scenario_set(series, ev, grid);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& doc) { write_text(path, doc.dump(2) + "\n"); }

template <class F>
void write_stream(const fs::path& path, F&& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  body(out);
  if (!out) throw Error("write failed for " + path.string());
}

void print_violations(std::ostream& log, const std::vector<Violation>& v, const char* what) {
  for (const auto& x : v) log << what << ": " << describe(x) << "\n";
}

// Scenario set for plan, sweep and export: read from disk or generated from
// the history. `converged` reports the generator outcome.
ScenarioSet planning_scenarios(const RunConfig& c, const Base& b, std::ostream& log, bool* converged) {
  *converged = true;
  if (c.reads_scenarios()) {
    ScenarioSet set = read_dir(c.scenarios, b.grid, "scenario directory");
    log << "read " << set.scenarios.size() << " scenarios from " << c.scenarios.string() << "\n";
    return set;
  }
  const ScenarioSet history = read_dir(c.history, b.grid, "history directory");
  const auto g = scengen::generate_scenarios(history, b.catalog.ev, b.tariffs.pv_cap, c.scengen);
  *converged = g.raw.converged;
  log << "generated " << g.set.scenarios.size() << " scenarios (seed " << c.scengen.seed << ", "
      << (g.raw.converged ? "converged" : "best effort") << ")\n";
  return g.set;
}

double single_tax(const RunConfig& c, const Base& b) {
  if (c.carbon_tax.size() > 1) throw InvalidParameter("this command takes one carbon tax; use sweep for a list");
  return c.carbon_tax.empty() ? b.tariffs.carbon_tax : c.carbon_tax.front();
}

PlanningInputs planning_inputs(const RunConfig& c, std::ostream& log, bool* converged) {
  Base b = load_base(c);
  PlanningInputs in;
  in.scenarios = planning_scenarios(c, b, log, converged);
  in.tariffs = b.tariffs;
  in.tariffs.carbon_tax = single_tax(c, b);
  in.catalog = std::move(b.catalog);
  const auto v = validate_inputs(in);
  if (!v.empty()) {
    print_violations(log, v, "input");
    throw InvalidParameter(std::to_string(v.size()) + " input violations");
  }
  return in;
}

fs::path mps_target(const RunConfig& c) {
  if (c.out.extension() == ".mps") return c.out;
  return c.out / "model.mps";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
}

json solver_json(const milp::BnbSolution& s) {
  json j = {{"status", std::string(milp::to_string(s.status))},
            {"has_incumbent", s.has_incumbent},
            {"nodes", s.nodes},
            {"lp_iterations", s.lp_iterations},
            {"wall_seconds", s.wall_seconds}};
  if (s.has_incumbent) {
    j["objective"] = s.objective;
    j["gap"] = s.gap();
  }
  if (std::isfinite(s.best_bound)) j["best_bound"] = s.best_bound;
  if (std::isfinite(s.root_bound)) j["root_bound"] = s.root_bound;
  return j;
}

}  // namespace

int cmd_scen_gen(const RunConfig& c, std::ostream& log) {
  const Base b = load_base(c);
  const ScenarioSet history = read_dir(c.history, b.grid, "history directory");
  const auto g = scengen::generate_scenarios(history, b.catalog.ev, b.tariffs.pv_cap, c.scengen);
  ensure_dir(c.out);
  write_scenario_set(g.set, c.out / kSeriesFileName, c.out / kEvFileName);
  write_json(c.out / "scengen_log.json", scengen::generation_log_json(g));
  const auto& best = g.raw.iteration_log.at(static_cast<std::size_t>(g.raw.best_iteration));
  log << "wrote " << g.set.scenarios.size() << " scenarios to " << c.out.string() << "; moment error "
      << best.moment_error << ", correlation error " << best.correlation_error << " (tol " << c.scengen.hmm.tol
      << ")\n";
  if (!g.raw.converged) {
    log << "tolerance not met after " << c.scengen.hmm.max_iters << " iterations; kept the best iterate\n";
    return kBestEffort;
  }
  return kSuccess;
}

int cmd_plan(const RunConfig& c, std::ostream& log) {
  bool converged = true;
  const PlanningInputs in = planning_inputs(c, log, &converged);
  ensure_dir(c.out);

  const model::PlanResult r = model::solve_plan(in, c.model, c.solver);
  if (c.export_mps) {
    milp::write_mps_file(r.model.milp, c.out / "model.mps");
    log << "wrote " << (c.out / "model.mps").string() << "\n";
  }
  json audit = {{"carbon_tax", in.tariffs.carbon_tax},
                {"zeta", c.model.zeta},
                {"mode", std::string(model::to_string(c.model.mode))},
                {"scenarios", in.scenarios.scenarios.size()},
                {"columns", r.model.milp.num_cols()},
                {"rows", r.model.milp.num_rows()},
                {"solver", solver_json(r.bnb)}};

  if (r.bnb.status == milp::BnbStatus::Infeasible) {
    const std::string hint = model::diagnose_infeasibility(in, c.model);
    audit["infeasible_family"] = hint;
    write_json(c.out / "audit.json", audit);
    log << "model is infeasible; first failing constraint family: " << hint << "\n";
    return kInfeasible;
  }
  if (!r.solution) {
    write_json(c.out / "audit.json", audit);
    log << "no feasible plan found within the limits (" << milp::to_string(r.bnb.status) << ")\n";
    return kBestEffort;
  }

  const model::PlanSolution& plan = *r.solution;
  const analysis::VerifyReport report = analysis::verify_plan(in, plan, c.model.zeta);
  audit["verify"] = analysis::to_json(report);
  const analysis::ChanceAudit chance = analysis::chance_audit(plan, in.catalog.ev, c.model.zeta);
  audit["chance"] = analysis::to_json(chance);
  if (!report.ok()) {
    write_json(c.out / "audit.json", audit);
    log << "solver output failed verification:\n";
    for (const auto& v : report.violations) log << "  " << v << "\n";
    return kBestEffort;
  }

  analysis::SummaryRow row;
  row.carbon_tax = in.tariffs.carbon_tax;
  row.fc_units = plan.fc_units;
  row.bess_capacity = plan.bess_capacity;
  row.substandard = chance.count();
  row.costs = analysis::cost_breakdown(plan, in, c.model.zeta, r.model.annualization);
  row.status = std::string(milp::to_string(r.bnb.status));
  write_stream(c.out / "plan_summary.csv",
               [&](std::ostream& o) { analysis::write_plan_summary_csv(o, in.catalog, {row}); });
  write_stream(c.out / "cost_breakdown.csv", [&](std::ostream& o) { analysis::write_cost_breakdown_csv(o, {row}); });

  std::set<int> shown;
  json extremes = json::object();
  for (auto kind : {analysis::ExtremeKind::Elec, analysis::ExtremeKind::Heat}) {
    if (c.extreme && *c.extreme != kind) continue;
    const int s = analysis::extreme_scenario(in.scenarios, kind);
    extremes[kind == analysis::ExtremeKind::Elec ? "elec" : "heat"] = s;
    if (!shown.insert(s).second) continue;
    const std::string tag = std::to_string(s);
    write_stream(c.out / ("dispatch_" + tag + ".csv"),
                 [&](std::ostream& o) { analysis::write_dispatch_csv(o, plan, in, s); });
    write_stream(c.out / ("soc_" + tag + ".csv"), [&](std::ostream& o) { analysis::write_soc_csv(o, plan, in, s); });
  }
  audit["extreme_scenarios"] = extremes;
  audit["total_cost"] = row.costs.total;
  write_json(c.out / "audit.json", audit);

  log << "plan: BESS " << plan.bess_capacity << " kWh";
  for (std::size_t i = 0; i < plan.fc_units.size(); ++i) {
    log << ", " << to_string(in.catalog.fuel_cells[i].id) << " " << plan.fc_units[i];
  }
  log << "; total " << row.costs.total << " (10^4 CNY); substandard " << chance.count() << "/" << chance.limit
      << "; " << milp::to_string(r.bnb.status) << " after " << r.bnb.nodes << " nodes\n";
  const bool proven = r.bnb.status == milp::BnbStatus::Optimal;
  return proven && converged ? kSuccess : kBestEffort;
}

int cmd_sweep(const RunConfig& c, std::ostream& log) {
  if (c.carbon_tax.empty()) throw InvalidParameter("sweep needs at least one carbon tax (--carbon-tax 40,100)");
  RunConfig first = c;
  first.carbon_tax.resize(1);
  bool converged = true;
  const PlanningInputs in = planning_inputs(first, log, &converged);
  ensure_dir(c.out);

  analysis::SweepOptions opt;
  opt.model = c.model;
  opt.solver = c.solver;
  opt.jobs = c.jobs;
  const analysis::SweepResult res = analysis::sweep_carbon_tax(in, c.carbon_tax, opt);
  const auto rows = res.rows();
  write_stream(c.out / "plan_summary.csv",
               [&](std::ostream& o) { analysis::write_plan_summary_csv(o, in.catalog, rows); });
  write_stream(c.out / "cost_breakdown.csv", [&](std::ostream& o) { analysis::write_cost_breakdown_csv(o, rows); });

  json levels = json::array();
  int solved = 0;
  bool all_proven = true;
  for (const auto& l : res.levels) {
    json j = {{"carbon_tax", l.carbon_tax}, {"ok", l.ok}, {"status", std::string(milp::to_string(l.status))},
              {"nodes", l.nodes}, {"wall_seconds", l.wall_seconds}};
    if (l.ok) {
      ++solved;
      j["objective"] = l.objective;
      j["gap"] = l.gap;
      j["total_cost"] = l.row.costs.total;
      j["substandard"] = l.row.substandard;
      all_proven = all_proven && l.status == milp::BnbStatus::Optimal;
      log << "tax " << l.carbon_tax << ": total " << l.row.costs.total << ", substandard " << l.row.substandard
          << ", " << milp::to_string(l.status) << " in " << l.wall_seconds << " s\n";
    } else {
      j["error"] = l.error;
      log << "tax " << l.carbon_tax << ": failed: " << l.error << "\n";
    }
    levels.push_back(std::move(j));
  }
  const bool monotone = res.totals_non_decreasing();
  write_json(c.out / "sweep.json", {{"levels", levels}, {"totals_non_decreasing", monotone}});
  if (!monotone) log << "warning: total cost decreases somewhere along the tax levels\n";
  if (solved == 0) {
    const bool infeasible = std::all_of(res.levels.begin(), res.levels.end(), [](const analysis::SweepLevel& l) {
      return l.status == milp::BnbStatus::Infeasible;
    });
    return infeasible ? kInfeasible : kBestEffort;
  }
  return all_proven && converged && solved == static_cast<int>(res.levels.size()) ? kSuccess : kBestEffort;
}

int cmd_export_mps(const RunConfig& c, std::ostream& log) {
  bool converged = true;
  const PlanningInputs in = planning_inputs(c, log, &converged);
  const model::AssembledModel m = model::assemble_model(in, c.model);
  const fs::path target = mps_target(c);
  if (target.has_parent_path()) ensure_dir(target.parent_path());
  milp::write_mps_file(m.milp, target);
  log << "wrote " << target.string() << " (" << m.milp.num_cols() << " columns, " << m.milp.num_rows()
      << " rows)\n";
  return converged ? kSuccess : kBestEffort;
}

int cmd_validate(const RunConfig& c, std::ostream& log) {
  const Base b = load_base(c);
  std::size_t problems = 0;
  const auto vc = validate_catalog(b.catalog);
  print_violations(log, vc, "catalog");
  const auto vt = validate_tariffs(b.tariffs, b.grid.hours_per_day);
  print_violations(log, vt, "tariffs");
  problems += vc.size() + vt.size();
  auto check_set = [&](const fs::path& dir, const char* what) {
    const ScenarioSet set = read_dir(dir, b.grid, what);
    const auto v = validate_scenario_set(set, b.catalog, b.tariffs);
    print_violations(log, v, what);
    problems += v.size();
    log << what << ": " << set.scenarios.size() << " days checked\n";
  };
  if (!c.history.empty()) check_set(c.history, "history");
  if (!c.scenarios.empty()) check_set(c.scenarios, "scenarios");
  if (problems) {
    log << problems << " problems found\n";
    return kInputError;
  }
  log << "inputs are valid\n";
  return kSuccess;
}

}  // namespace hubplan::cli
