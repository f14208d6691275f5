// Acceptance checks, one pass/fail line per criterion.
//   acceptance                 run all
//   acceptance --criterion N   run one (ctest registers each separately)

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "fixtures.hpp"
#include "hubplan/analysis/audit.hpp"
#include "hubplan/analysis/costs.hpp"
#include "hubplan/analysis/sweep.hpp"
#include "hubplan/analysis/verify.hpp"
#include "hubplan/core/finance.hpp"
#include "hubplan/core/io.hpp"
#include "hubplan/milp/bnb.hpp"
#include "hubplan/milp/mps.hpp"
#include "hubplan/model/assemble.hpp"
#include "hubplan/model/solve.hpp"
#include "hubplan/scengen/generate.hpp"
#include "hubplan/scengen/hmm.hpp"
#include "oracles.hpp"

using namespace hubplan;
namespace fs = std::filesystem;

namespace {

// Tolerances, pinned.
constexpr double kBessRounding = 0.5;          // criterion 1, 10^4 CNY
constexpr double kAnnualizationRel = 1e-12;    // criterion 2
constexpr double kLatticeGapRel = 1e-3;        // criterion 4
constexpr double kTinyRuntimeS = 30.0;         // criterion 4
constexpr double kExclusivityProduct = 1e-6;   // criterion 5, kW^2
constexpr double kModeAgreementRel = 1e-6;     // criterion 5
constexpr double kMonotoneRel = 1e-6;          // criterion 6
constexpr double kSweepLevelS = 60.0;          // criterion 6
constexpr double kMomentTol = 0.05;            // criterion 7
constexpr double kHmmRuntimeS = 5.0;           // criterion 7
constexpr double kVerifyTol = 1e-6;            // criterion 8
constexpr double kCrossSolverRel = 1e-5;       // criterion 9
constexpr double kInvestRuntimeS = 1.0;        // criterion 1
// Criterion 3 judges the returned plan, not its optimality. The larger random
// instances are hard knapsack choices over the indicators, so the search is
// capped and the incumbent is audited.
constexpr double kCardinalitySolveS = 10.0;

bool verbose = false;

void progress(const std::string& what, double seconds) {
  if (verbose) std::cerr << "  " << what << " " << seconds << " s\n";
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

model::ModelConfig config(double zeta, model::ExclusivityMode mode = model::ExclusivityMode::Relaxed) {
  model::ModelConfig c;
  c.zeta = zeta;
  c.mode = mode;
  return c;
}

fs::path tmp_dir(const std::string& name) {
  const fs::path p = fs::path(HUBPLAN_TEST_TMP) / "acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// ---------------------------------------------------------------------------

Outcome investment_arithmetic() {
  struct Reference {
    double tax;
    double pem_gas, pem_h2, bess_kwh;   // plan
    double fc_cost, bess_cost;          // expected costs
  };
  const Reference rows[] = {
      {40, 27, 0, 1490, 810, 224},  {100, 17, 1, 1490, 805, 224}, {400, 7, 2, 1400, 800, 211},
      {700, 7, 2, 1520, 800, 228},  {1000, 0, 3, 1330, 885, 199},
  };
  const Stopwatch clock;
  const EquipmentCatalog cat = test::example_catalog();
  Outcome o;
  std::string bad;
  for (const auto& r : rows) {
    const analysis::CostBreakdown c = analysis::investment_costs(cat, r.bess_kwh, {0.0, r.pem_gas, r.pem_h2});
    if (c.fc_investment != r.fc_cost) {
      o.pass = false;
      bad += " tax " + fmt(r.tax) + ": FC " + fmt(c.fc_investment) + " vs " + fmt(r.fc_cost) + ";";
    }
    if (std::abs(c.bess_investment - r.bess_cost) > kBessRounding) {
      o.pass = false;
      bad += " tax " + fmt(r.tax) + ": BESS " + fmt(c.bess_investment) + " vs " + fmt(r.bess_cost) + ";";
    }
  }
  const double t = clock.seconds();
  if (t >= kInvestRuntimeS) o.pass = false;
  o.detail = "FC and BESS investment for 5 reference plans (" + fmt(t * 1e3, 3) + " ms)" +
             (bad.empty() ? "" : "; mismatches:" + bad);
  return o;
}

Outcome annualization() {
  Outcome o;
  double worst = 0.0;
  int points = 0;
  for (int pp : {1, 2, 5, 10, 20, 30}) {
    for (double g : {0.0, 0.01, 0.06, 0.1, 0.25}) {
      for (int n : {1, 10, 100, 500}) {
        TimeGrid grid;
        grid.planning_years = pp;
        grid.discount_rate = g;
        grid.n_scenarios = n;
        const double got = annualization_factor(grid);
        const double want = test::annualization_oracle(pp, g, n);
        worst = std::max(worst, std::abs(got - want) / std::abs(want));
        ++points;
      }
    }
  }
  o.pass = worst <= kAnnualizationRel;
  o.detail = std::to_string(points) + " grid points, worst relative error " + fmt(worst, 3);
  return o;
}

Outcome chance_cardinality() {
  Outcome o;
  int solved = 0, proven = 0, binding = 0;
  std::string bad;
  milp::BnbOptions bnb;
  bnb.time_limit_s = kCardinalitySolveS;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const int n = seed <= 10 ? 20 : 100;
    const PlanningInputs in = test::random_fixture(1000 + seed, n, 4, 2);
    const Stopwatch clock;
    const model::PlanResult r = model::solve_plan(in, config(0.05), bnb);
    progress("seed " + std::to_string(seed) + " N " + std::to_string(n) + " nodes " + std::to_string(r.bnb.nodes),
             clock.seconds());
    if (!r.solution) {
      o.pass = false;
      bad += " seed " + std::to_string(seed) + " unsolved;";
      continue;
    }
    ++solved;
    proven += r.bnb.status == milp::BnbStatus::Optimal;
    const analysis::ChanceAudit a = analysis::chance_audit(*r.solution, in.catalog.ev, 0.05);
    const int limit = static_cast<int>(std::floor(n * 0.05 + 1e-9));
    if (a.count() > limit) {
      o.pass = false;
      bad += " seed " + std::to_string(seed) + " count " + std::to_string(a.count()) + ">" + std::to_string(limit) + ";";
    }
    binding += a.count() == limit && limit > 0;
  }
  o.detail = std::to_string(solved) + "/20 random instances (N 20 and 100) returned a plan, " + std::to_string(proven) +
             " proven optimal, limit reached in " +
             std::to_string(binding) + (bad.empty() ? "" : ";" + bad);
  return o;
}

Outcome tiny_optimality() {
  Outcome o;
  // Scenario 1 of this fixture cannot reach the target, so zeta must allow
  // one substandard scenario out of two.
  const double zeta = 0.5;
  const PlanningInputs in = test::load_fixture("tiny");
  const Stopwatch solve_clock;
  const model::PlanResult r = model::solve_plan(in, config(zeta));
  const double solve_s = solve_clock.seconds();
  const Stopwatch oracle_clock;
  const test::LatticeResult lat = test::lattice_optimum(in, zeta);
  const double oracle_s = oracle_clock.seconds();
  if (!r.solution || r.bnb.status != milp::BnbStatus::Optimal) {
    o.pass = false;
    o.detail = "solver did not prove optimality";
    return o;
  }
  const double obj = r.bnb.objective;
  const double gap = (lat.best - obj) / std::abs(lat.best);
  o.pass = obj <= lat.best + 1e-9 * std::abs(lat.best) && obj >= r.bnb.root_bound - 1e-9 &&
           gap <= kLatticeGapRel && solve_s < kTinyRuntimeS;
  o.detail = "B&B " + fmt(obj, 9) + ", lattice " + fmt(lat.best, 9) + ", LP bound " + fmt(r.bnb.root_bound, 9) +
             ", gap " + fmt(gap, 3) + ", solve " + fmt(solve_s, 3) + " s, oracle " + fmt(oracle_s, 3) + " s";
  return o;
}

struct ExclusivityCase {
  std::string name;
  PlanningInputs inputs;
  double zeta;
  // The desk set is an example, not a fixture. Its binary-mode tree is far
  // larger than the relaxed one, so only the relaxed solve is checked there.
  bool binary = true;
};

std::vector<ExclusivityCase> shipped_instances() {
  std::vector<ExclusivityCase> out;
  for (const auto& name : test::solvable_fixture_names()) out.push_back({name, test::load_fixture(name), 0.5});
  out.push_back({"desk", test::desk_inputs(400.0), 0.05, false});
  return out;
}

double worst_simultaneous(const model::PlanSolution& p) {
  double worst = 0.0;
  for (const auto& d : p.scenarios) {
    for (std::size_t t = 0; t < d.bess_ch.size(); ++t) {
      worst = std::max(worst, d.bess_ch[t] * d.bess_dis[t]);
      worst = std::max(worst, d.tess_ch[t] * d.tess_dis[t]);
      for (std::size_t j = 0; j < d.ev_ch.size(); ++j) {
        if (!std::isnan(d.ev_ch[j][t])) worst = std::max(worst, d.ev_ch[j][t] * d.ev_dis[j][t]);
      }
    }
  }
  return worst;
}

Outcome exclusivity() {
  Outcome o;
  std::string detail;
  for (const auto& c : shipped_instances()) {
    const model::PlanResult rel = model::solve_plan(c.inputs, config(c.zeta));
    if (!rel.solution || rel.bnb.status != milp::BnbStatus::Optimal) {
      o.pass = false;
      detail += " " + c.name + " unsolved;";
      continue;
    }
    const double prod = worst_simultaneous(*rel.solution);
    if (prod > kExclusivityProduct) o.pass = false;
    detail += " " + c.name + " ch*dis " + fmt(prod, 2);
    if (c.binary) {
      const model::PlanResult bin = model::solve_plan(c.inputs, config(c.zeta, model::ExclusivityMode::Binary));
      if (!bin.solution || bin.bnb.status != milp::BnbStatus::Optimal) {
        o.pass = false;
        detail += " binary unsolved;";
        continue;
      }
      const double diff = std::abs(rel.bnb.objective - bin.bnb.objective) / std::max(1.0, std::abs(bin.bnb.objective));
      if (diff > kModeAgreementRel) o.pass = false;
      detail += " modes " + fmt(diff, 2);
    }
    detail += ";";
  }
  o.detail = "relaxed vs binary on shipped instances:" + detail;
  return o;
}

Outcome tax_monotonicity() {
  Outcome o;
  const std::vector<double> taxes{40, 100, 400, 700, 1000};
  analysis::SweepOptions opt;
  opt.model = config(0.05);
  const analysis::SweepResult r = analysis::sweep_carbon_tax(test::desk_inputs(40.0), taxes, opt);
  std::string totals, h2;
  double slowest = 0.0;
  for (const auto& l : r.levels) {
    if (!l.ok || l.status != milp::BnbStatus::Optimal) o.pass = false;
    slowest = std::max(slowest, l.wall_seconds);
    totals += (totals.empty() ? "" : " ") + fmt(l.row.costs.total, 6);
    h2 += (h2.empty() ? "" : " ") + (l.row.fc_units.size() == 3 ? fmt(l.row.fc_units[2]) : std::string("-"));
  }
  const bool monotone = r.totals_non_decreasing(kMonotoneRel);
  o.pass = o.pass && monotone && slowest < kSweepLevelS;
  o.detail = "totals " + totals + (monotone ? " non-decreasing" : " NOT monotone") + "; slowest level " +
             fmt(slowest, 3) + " s; PEM_H2 sets " + h2 + " (reported only)";
  return o;
}

std::string matrix_csv(const scengen::Matrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) s += (j ? "," : "") + format_double(m(i, j));
    s += '\n';
  }
  return s;
}

Outcome hmm_quality() {
  Outcome o;
  scengen::MomentTargets t;
  t.mean = {0.0, 10.0, 5.0, -3.0};
  t.variance = {1.0, 4.0, 2.0, 0.5};
  t.skewness = {0.0, 0.5, -0.3, 1.0};
  t.kurtosis = {3.0, 3.5, 3.2, 4.5};
  t.correlation = scengen::Matrix::identity(4);
  auto set = [&](int a, int b, double v) { t.correlation(a, b) = t.correlation(b, a) = v; };
  set(0, 1, 0.5);
  set(0, 2, 0.8);
  set(1, 2, 0.5);  // dimension 3 stays uncorrelated

  const Stopwatch clock;
  const scengen::RawSampleMatrix a = scengen::hmm_generate(t, 500, 2024);
  const double runtime = clock.seconds();

  // Independent re-measurement.
  double mean_err = 0, var_err = 0, skew_err = 0, kurt_err = 0, corr_err = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    const test::Moments4 m = test::direct_moments(a.values.column(j));
    mean_err = std::max(mean_err, std::abs(m.mean - t.mean[j]));
    var_err = std::max(var_err, std::abs(m.variance - t.variance[j]));
    skew_err = std::max(skew_err, std::abs(m.skewness - t.skewness[j]));
    kurt_err = std::max(kurt_err, std::abs(m.kurtosis - t.kurtosis[j]));
    for (std::size_t k = j + 1; k < 4; ++k) {
      const double r = test::direct_correlation(a.values.column(j), a.values.column(k));
      corr_err = std::max(corr_err, std::abs(r - t.correlation(j, k)));
    }
  }

  // Determinism: equal seeds give byte-identical files.
  const fs::path dir = tmp_dir("hmm");
  auto write = [&](const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; };
  const scengen::RawSampleMatrix b = scengen::hmm_generate(t, 500, 2024);
  write(dir / "a.csv", matrix_csv(a.values));
  write(dir / "b.csv", matrix_csv(b.values));
  bool identical = read_text_file(dir / "a.csv") == read_text_file(dir / "b.csv");

  // Same for full scenario sets written through the scenario CSV writer.
  const fs::path hist = test::data_dir() / "example" / "history";
  TimeGrid g;
  const ScenarioSet history = read_scenario_set(hist / kSeriesFileName, hist / kEvFileName, g);
  scengen::GenerateOptions opt;
  opt.n_scenarios = 50;
  opt.seed = 99;
  const EquipmentCatalog cat = test::example_catalog();
  for (const char* run : {"run1", "run2"}) {
    const scengen::GeneratedScenarios gen = scengen::generate_scenarios(history, cat.ev, 1000.0, opt);
    fs::create_directories(dir / run);
    write_scenario_set(gen.set, dir / run / kSeriesFileName, dir / run / kEvFileName);
  }
  for (const char* f : {kSeriesFileName, kEvFileName}) {
    identical = identical && read_text_file(dir / "run1" / f) == read_text_file(dir / "run2" / f);
  }

  const double worst = std::max({mean_err, var_err, skew_err, kurt_err, corr_err});
  o.pass = worst <= kMomentTol && identical && runtime < kHmmRuntimeS;
  o.detail = "N=500 D=4: |mean| " + fmt(mean_err, 2) + " |var| " + fmt(var_err, 2) + " |skew| " + fmt(skew_err, 2) +
             " |kurt| " + fmt(kurt_err, 2) + " |corr| " + fmt(corr_err, 2) + "; " + fmt(runtime, 3) + " s; files " +
             (identical ? "byte-identical" : "DIFFER");
  return o;
}

Outcome verifier() {
  Outcome o;
  int checked = 0;
  std::string bad;
  auto check = [&](const std::string& name, const PlanningInputs& in, const model::ModelConfig& cfg) {
    const model::PlanResult r = model::solve_plan(in, cfg);
    if (!r.solution || r.bnb.status != milp::BnbStatus::Optimal) return;
    ++checked;
    double max_load = 0.0;
    for (const auto& s : in.scenarios.scenarios) {
      for (double l : s.elec_load) max_load = std::max(max_load, l);
    }
    const analysis::VerifyReport v = analysis::verify_plan(in, *r.solution, cfg.zeta);
    const bool ok = v.ok() && v.max_elec_residual <= kVerifyTol * (1.0 + max_load) &&
                    v.min_heat_surplus >= -kVerifyTol && v.max_storage_residual <= kVerifyTol &&
                    v.max_bound_violation <= kVerifyTol && v.max_integrality <= kVerifyTol;
    if (!ok) {
      o.pass = false;
      bad += " " + name + (v.violations.empty() ? "" : " (" + v.violations.front() + ")") + ";";
    }
  };
  for (const auto& c : shipped_instances()) {
    check(c.name + "/relaxed", c.inputs, config(c.zeta));
    if (c.binary) check(c.name + "/binary", c.inputs, config(c.zeta, model::ExclusivityMode::Binary));
  }
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    check("random" + std::to_string(seed), test::random_fixture(500 + seed, 20, 6, 2), config(0.05));
  }
  o.detail = std::to_string(checked) + " optimal solutions re-verified" + (bad.empty() ? "" : "; failures:" + bad);
  return o;
}

std::optional<double> external_objective(const fs::path& mps) {
  const fs::path script = fs::path(HUBPLAN_ACCEPTANCE_DIR) / "highs_objective.py";
  if (std::system("python3 -c \"import highspy\" >/dev/null 2>&1") != 0) return std::nullopt;
  const fs::path out = mps.parent_path() / "external.txt";
  const std::string cmd = "python3 \"" + script.string() + "\" \"" + mps.string() + "\" > \"" + out.string() + "\"";
  if (std::system(cmd.c_str()) != 0) return std::nullopt;
  std::istringstream in(read_text_file(out));
  std::string status;
  double obj = 0.0;
  if (!(in >> status >> obj) || status != "Optimal") return std::nullopt;
  return obj;
}

Outcome mps_round_trip() {
  Outcome o;
  int equal = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    test::Rng rng(seed * 7919);
    test::RandomMilpShape shape;
    shape.cols = rng.integer(0, 12);
    shape.rows = rng.integer(0, 10);
    shape.finite_bounds = rng.coin();
    shape.fractional = true;
    const milp::MilpModel m = test::random_milp(seed, shape);
    if (milp::parse_mps(milp::write_mps(m)) == m) {
      ++equal;
    } else {
      o.pass = false;
    }
  }
  o.detail = std::to_string(equal) + "/100 fuzzed models identical after round trip";

  const PlanningInputs desk = test::desk_inputs(40.0);
  const model::AssembledModel a = model::assemble_model(desk, config(0.05));
  if (milp::parse_mps(milp::write_mps(a.milp)) != a.milp) o.pass = false;
  const fs::path mps = tmp_dir("mps") / "desk.mps";
  milp::write_mps_file(a.milp, mps);
  const std::optional<double> ext = external_objective(mps);
  if (!ext) {
    o.detail += "; external solver not available, parity skipped";
    return o;
  }
  const model::PlanResult r = model::solve_plan(desk, config(0.05));
  const double rel = std::abs(r.bnb.objective - *ext) / std::max(1.0, std::abs(*ext));
  if (rel > kCrossSolverRel) o.pass = false;
  o.detail += "; desk model vs HiGHS: " + fmt(r.bnb.objective, 10) + " vs " + fmt(*ext, 10) + " (rel " + fmt(rel, 2) + ")";
  return o;
}

const std::vector<std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::vector<std::pair<const char*, std::function<Outcome()>>> list = {
      {"investment-cost arithmetic", investment_arithmetic},
      {"annualization factor", annualization},
      {"chance-constraint cardinality", chance_cardinality},
      {"tiny-instance optimality", tiny_optimality},
      {"exclusivity without binaries", exclusivity},
      {"carbon-tax monotonicity", tax_monotonicity},
      {"scenario generator quality", hmm_quality},
      {"feasibility verifier", verifier},
      {"MPS round trip", mps_round_trip},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hubplan acceptance checks"};
  int only = 0;
  app.add_option("--criterion", only, "Run a single criterion (1-9)")->check(CLI::Range(1, 9));
  app.add_flag("--verbose", verbose, "Per-instance timings on stderr");
  CLI11_PARSE(app, argc, argv);

  bool all_pass = true;
  for (std::size_t k = 0; k < criteria().size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    if (only != 0 && only != id) continue;
    const auto& [name, run] = criteria()[k];
    Outcome o;
    const Stopwatch clock;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " [" << name << "] " << o.detail
              << " (" << fmt(clock.seconds(), 3) << " s)" << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
