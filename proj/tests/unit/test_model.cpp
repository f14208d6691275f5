#include <doctest.h>

#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "hubplan/core/finance.hpp"
#include "hubplan/milp/check.hpp"
#include "hubplan/model/assemble.hpp"
#include "hubplan/model/builders.hpp"
#include "hubplan/model/solution.hpp"
#include "hubplan/model/solve.hpp"
#include "oracles.hpp"

using namespace hubplan;
using namespace hubplan::model;

namespace {

// One scenario, two hours, one PEM_gas type, example storage and fleet.
PlanningInputs mini(int n_ev) {
  PlanningInputs in;
  in.catalog = test::example_catalog();
  in.catalog.fuel_cells = {in.catalog.fuel_cells[1]};
  in.catalog.ev.n_ev = n_ev;
  in.tariffs.elec_price = {0.3, 1.0};
  in.tariffs.grid_emission = {0.0006, 0.0008};
  in.scenarios.grid.hours_per_day = 2;
  in.scenarios.grid.n_scenarios = 1;
  Scenario s;
  s.elec_load = {10.0, 20.0};
  s.heat_load = {5.0, 5.0};
  s.pv_avail = {0.0, 300.0};
  for (int j = 0; j < n_ev; ++j) s.ev.push_back(EvRecord{0, 2, 0.5});
  in.scenarios.scenarios = {s};
  return in;
}

ModelConfig config(ExclusivityMode mode, double zeta = 0.05) {
  ModelConfig c;
  c.mode = mode;
  c.zeta = zeta;
  return c;
}

const milp::Row& find_row(const milp::MilpModel& m, const std::string& name) {
  for (const auto& r : m.rows) {
    if (r.name == name) return r;
  }
  FAIL("row " << name << " not found");
  throw;
}

double coef(const milp::Row& r, int col) {
  for (const auto& e : r.entries) {
    if (e.col == col) return e.value;
  }
  return 0.0;
}

// Row satisfaction at a partial assignment; missing columns are zero.
bool row_holds(const milp::Row& r, const std::map<int, double>& x) {
  double a = 0.0;
  for (const auto& e : r.entries) {
    auto it = x.find(e.col);
    if (it != x.end()) a += e.value * it->second;
  }
  switch (r.sense) {
    case milp::Sense::LessEqual: return a <= r.rhs + 1e-9;
    case milp::Sense::GreaterEqual: return a >= r.rhs - 1e-9;
    default: return std::abs(a - r.rhs) <= 1e-9;
  }
}

}  // namespace

TEST_CASE("column census on the two-hour instance") {
  const AssembledModel a = assemble_model(mini(0), config(ExclusivityMode::Relaxed));
  // 1 X_ESS + 1 X_FC + 2 grid + 2 fuel + 2 PV + 4 BESS flows + 2 E_bess
  // + 4 TESS flows + 2 E_tess + 1 Z.
  CHECK(a.milp.num_cols() == 1 + 1 + 2 + 2 + 2 + 4 + 2 + 4 + 2 + 1);
  CHECK(a.milp.num_cols() == 21);
  CHECK(a.milp.num_rows() == 22);  // 4 balance, 4 fuel-cell caps, 11 BESS, 2 TESS, 1 cardinality

  const AssembledModel b = assemble_model(mini(1), config(ExclusivityMode::Relaxed));
  CHECK(b.milp.num_cols() == 21 + 7);
  CHECK(b.index.count(VarKind::EvCh) == 2);
  CHECK(b.index.count(VarKind::EvE) == 2);
  CHECK(b.index.count(VarKind::Shortfall) == 1);
  CHECK(b.milp.num_rows() == 26);  // + 2 EV dynamics, shortfall and its Z link

  const AssembledModel c = assemble_model(mini(1), config(ExclusivityMode::Binary));
  CHECK(c.milp.num_cols() == 28 + 6);
  CHECK(c.index.count(VarKind::YBess) == 2);
  CHECK(c.index.count(VarKind::YTess) == 2);
  CHECK(c.index.count(VarKind::YEv) == 2);
  CHECK(c.milp.num_rows() == 38);  // + 2 exclusivity rows per indicator
  CHECK_NOTHROW(c.milp.validate());
}

TEST_CASE("column census formula on a full-size instance") {
  PlanningInputs in = test::random_fixture(21, 100, 24, 10);
  in.catalog.fuel_cells = test::example_catalog().fuel_cells;
  const AssembledModel a = assemble_model(in, config(ExclusivityMode::Relaxed));
  long parked = 0;
  for (const auto& s : in.scenarios.scenarios) {
    for (const auto& r : s.ev) parked += r.depart_hour - r.arrive_hour;
  }
  const long n = 100, t = 24, fc = 3, ev = 10;
  const long expected = 1 + fc + n * t * (1 + fc + 1 + 3 + 3) + 3 * parked + n * ev + n;
  CHECK(a.milp.num_cols() == expected);
  CHECK(a.milp.num_cols() == a.index.size());
}

TEST_CASE("objective coefficients") {
  PlanningInputs in = mini(1);
  in.tariffs.carbon_tax = 100.0;
  const AssembledModel a = assemble_model(in, config(ExclusivityMode::Relaxed));
  const auto& cols = a.milp.columns;
  const double scale = test::annualization_oracle(10, 0.06, 1) / 1e4;
  CHECK(a.annualization == doctest::Approx(test::annualization_oracle(10, 0.06, 1)).epsilon(1e-12));
  CHECK(cols[a.index.at({VarKind::XEss})].cost == 0.15);
  CHECK(cols[a.index.at({VarKind::XFc, -1, -1, 0})].cost == 30.0);
  CHECK(cols[a.index.at({VarKind::Grid, 0, 1})].cost == doctest::Approx(scale * (1.0 + 100 * 0.0008)).epsilon(1e-12));
  CHECK(cols[a.index.at({VarKind::Fuel, 0, 0, 0})].cost == doctest::Approx(scale * (0.257 + 100 * 0.0002)).epsilon(1e-12));
  CHECK(cols[a.index.at({VarKind::Shortfall, 0, -1, -1, 0})].cost == doctest::Approx(scale * 1.0).epsilon(1e-12));
  CHECK(cols[a.index.at({VarKind::Pv, 0, 0})].cost == 0.0);
  CHECK(cols[a.index.at({VarKind::Z, 0})].cost == 0.0);

  ModelConfig soc = config(ExclusivityMode::Relaxed);
  soc.penalty_basis = PenaltyBasis::Soc;
  const AssembledModel b = assemble_model(in, soc);
  CHECK(b.milp.columns[b.index.at({VarKind::Shortfall, 0, -1, -1, 0})].cost ==
        doctest::Approx(scale / 60.0).epsilon(1e-12));

  // Zero investment and zero dispatch cost nothing.
  CHECK(a.milp.objective_value(std::vector<double>(cols.size(), 0.0)) == 0.0);
}

TEST_CASE("investment term reproduces the published plan costs") {
  const EquipmentCatalog cat = test::example_catalog();
  CHECK(1490 * cat.bess.invest_cost + 27 * cat.fuel_cells[1].invest_cost == doctest::Approx(1033.5));
  CHECK(3 * cat.fuel_cells[2].invest_cost == 885.0);
}

TEST_CASE("energy balance rows") {
  const AssembledModel a = assemble_model(mini(1), config(ExclusivityMode::Relaxed));
  const VarIndex& ix = a.index;
  const milp::Row& e = find_row(a.milp, "bal_e_s0_t0");
  CHECK(e.sense == milp::Sense::Equal);
  CHECK(e.rhs == 10.0);
  CHECK(coef(e, ix.at({VarKind::Grid, 0, 0})) == 1.0);
  CHECK(coef(e, ix.at({VarKind::Pv, 0, 0})) == 1.0);
  CHECK(coef(e, ix.at({VarKind::Fuel, 0, 0, 0})) == 0.34);
  CHECK(100.0 * -coef(e, ix.at({VarKind::BessCh, 0, 0})) == doctest::Approx(105.263).epsilon(1e-5));
  CHECK(coef(e, ix.at({VarKind::BessDis, 0, 0})) == 0.95);
  CHECK(coef(e, ix.at({VarKind::EvCh, 0, 0, -1, 0})) == doctest::Approx(-1.0 / 0.95));
  CHECK(coef(e, ix.at({VarKind::EvDis, 0, 0, -1, 0})) == 0.95);

  // With every other device idle the row forces grid import to the load.
  CHECK(row_holds(e, {{ix.at({VarKind::Grid, 0, 0}), 10.0}}));
  CHECK_FALSE(row_holds(e, {{ix.at({VarKind::Grid, 0, 0}), 9.0}}));

  const milp::Row& h = find_row(a.milp, "bal_h_s0_t0");
  CHECK(h.sense == milp::Sense::GreaterEqual);
  CHECK(coef(h, ix.at({VarKind::Fuel, 0, 0, 0})) == 0.5);
  // Heat 5 with C_gh = 0.5 needs at least 10 kW of fuel.
  CHECK(row_holds(h, {{ix.at({VarKind::Fuel, 0, 0, 0}), 10.0}}));
  CHECK_FALSE(row_holds(h, {{ix.at({VarKind::Fuel, 0, 0, 0}), 9.99}}));
}

TEST_CASE("device limits") {
  const AssembledModel a = assemble_model(mini(1), config(ExclusivityMode::Relaxed));
  const VarIndex& ix = a.index;
  const int fuel = ix.at({VarKind::Fuel, 0, 0, 0});
  const int units = ix.at({VarKind::XFc, -1, -1, 0});
  const milp::Row& cap = find_row(a.milp, "fc_e_PEM_gas_s0_t0");
  // Two sets cap electric output at 8.4 kW.
  CHECK(row_holds(cap, {{units, 2.0}, {fuel, 8.4 / 0.34}}));
  CHECK_FALSE(row_holds(cap, {{units, 2.0}, {fuel, 8.41 / 0.34}}));
  // No sets, no fuel.
  CHECK_FALSE(row_holds(cap, {{units, 0.0}, {fuel, 1e-6}}));
  CHECK(a.milp.columns[units].upper == 40.0);
  CHECK(a.milp.columns[units].kind == milp::ColumnKind::Integer);

  CHECK(a.milp.columns[ix.at({VarKind::Pv, 0, 1})].upper == 300.0);
  CHECK(a.milp.columns[ix.at({VarKind::Pv, 0, 0})].upper == 0.0);
  CHECK(a.milp.columns[ix.at({VarKind::Grid, 0, 0})].upper == 2000.0);
}

TEST_CASE("battery rows") {
  const AssembledModel a = assemble_model(mini(0), config(ExclusivityMode::Relaxed));
  const VarIndex& ix = a.index;
  const int x = ix.at({VarKind::XEss});
  const int ch0 = ix.at({VarKind::BessCh, 0, 0});

  const milp::Row& rate = find_row(a.milp, "bess_chr_s0_t0");
  CHECK(row_holds(rate, {{x, 1490.0}, {ch0, 372.5}}));
  CHECK_FALSE(row_holds(rate, {{x, 1490.0}, {ch0, 372.6}}));

  const milp::Row& dyn = find_row(a.milp, "bess_dyn_s0_t1");
  CHECK(row_holds(dyn, {{ix.at({VarKind::BessE, 0, 0}), 500.0}, {ch0, 100.0}, {ix.at({VarKind::BessE, 0, 1}), 600.0}}));

  const milp::Row& life = find_row(a.milp, "bess_life_s0");
  const double daily = 5000.0 * 1000.0 / (10 * 365.0);
  CHECK(daily == doctest::Approx(1369.9).epsilon(1e-4));
  CHECK(row_holds(life, {{x, 1000.0}, {ch0, daily - 1e-6}}));
  CHECK_FALSE(row_holds(life, {{x, 1000.0}, {ch0, daily + 1e-3}}));

  CHECK(row_holds(find_row(a.milp, "bess_smin_s0_t0"), {{x, 1000.0}, {ix.at({VarKind::BessE, 0, 0}), 100.0}}));
  CHECK_FALSE(row_holds(find_row(a.milp, "bess_smin_s0_t0"), {{x, 1000.0}, {ix.at({VarKind::BessE, 0, 0}), 99.0}}));

  // Final-hour flows are fixed to zero.
  CHECK(a.milp.columns[ix.at({VarKind::BessCh, 0, 1})].upper == 0.0);
}

TEST_CASE("thermal storage bounds and cyclic rows") {
  const AssembledModel a = assemble_model(mini(0), config(ExclusivityMode::Relaxed));
  const VarIndex& ix = a.index;
  CHECK(a.milp.columns[ix.at({VarKind::TessCh, 0, 0})].upper == 75.0);
  CHECK(a.milp.columns[ix.at({VarKind::TessDis, 0, 0})].upper == 75.0);
  CHECK(a.milp.columns[ix.at({VarKind::TessE, 0, 1})].upper == 150.0);
  const milp::Row& cyc = find_row(a.milp, "tess_cyc_s0");
  CHECK(row_holds(cyc, {{ix.at({VarKind::TessE, 0, 0}), 40.0}, {ix.at({VarKind::TessE, 0, 1}), 40.0}}));
  CHECK_FALSE(row_holds(cyc, {{ix.at({VarKind::TessE, 0, 0}), 40.0}, {ix.at({VarKind::TessE, 0, 1}), 41.0}}));
}

TEST_CASE("EV rows") {
  const AssembledModel a = assemble_model(mini(1), config(ExclusivityMode::Binary));
  const VarIndex& ix = a.index;
  CHECK(a.milp.columns[ix.at({VarKind::EvCh, 0, 0, -1, 0})].upper == 7.0);
  CHECK(a.milp.columns[ix.at({VarKind::EvDis, 0, 0, -1, 0})].upper == 15.0);
  CHECK(a.milp.columns[ix.at({VarKind::EvE, 0, 0, -1, 0})].lower == doctest::Approx(6.0));
  // Arrival at SOC 0.5 starts from 30 kWh.
  CHECK(find_row(a.milp, "ev_dyn_s0_t0_j0").rhs == 30.0);

  const int ch = ix.at({VarKind::EvCh, 0, 0, -1, 0});
  const int dis = ix.at({VarKind::EvDis, 0, 0, -1, 0});
  const int y = ix.at({VarKind::YEv, 0, 0, -1, 0});
  const milp::Row& ych = find_row(a.milp, "ev_s0_t0_j0_ych");
  const milp::Row& ydis = find_row(a.milp, "ev_s0_t0_j0_ydis");
  CHECK(row_holds(ych, {{ch, 7.0}, {y, 1.0}}));
  CHECK_FALSE(row_holds(ydis, {{dis, 1.0}, {y, 1.0}}));
  CHECK(row_holds(ydis, {{dis, 15.0}, {y, 0.0}}));
  CHECK_FALSE(row_holds(ych, {{ch, 1.0}, {y, 0.0}}));
}

TEST_CASE("chance constraint rows") {
  CHECK(substandard_limit(100, 0.05) == 5);
  CHECK(substandard_limit(10, 0.05) == 0);
  CHECK(substandard_limit(20, 0.05) == 1);
  CHECK(substandard_limit(3, 1.0 / 3.0) == 1);
  CHECK(substandard_limit(7, 0.0) == 0);

  const AssembledModel a = assemble_model(mini(1), config(ExclusivityMode::Relaxed));
  const VarIndex& ix = a.index;
  const int e_dep = ix.at({VarKind::EvE, 0, 1, -1, 0});
  const int d = ix.at({VarKind::Shortfall, 0, -1, -1, 0});
  const int z = ix.at({VarKind::Z, 0});
  const milp::Row& shortfall = find_row(a.milp, "soc_short_s0_j0");
  const milp::Row& link = find_row(a.milp, "soc_z_s0_j0");
  auto both = [&](std::map<int, double> x) { return row_holds(shortfall, x) && row_holds(link, x); };

  // Departing at exactly 54 of 60 kWh is standard.
  CHECK(both({{e_dep, 54.0}, {d, 0.0}, {z, 0.0}}));
  // 50 kWh needs a 4 kWh shortfall, which needs Z = 1.
  CHECK_FALSE(both({{e_dep, 50.0}, {d, 3.99}, {z, 1.0}}));
  CHECK_FALSE(both({{e_dep, 50.0}, {d, 4.0}, {z, 0.0}}));
  CHECK(both({{e_dep, 50.0}, {d, 4.0}, {z, 1.0}}));
  CHECK(a.milp.columns[d].cost * 4.0 == doctest::Approx(4.0 * a.annualization / 1e4));

  PlanningInputs big = test::random_fixture(3, 100, 4, 1);
  const AssembledModel b = assemble_model(big, config(ExclusivityMode::Relaxed, 0.05));
  CHECK(find_row(b.milp, "chance_card").rhs == 5.0);
}

TEST_CASE("empty fleet fixes Z at zero") {
  const AssembledModel a = assemble_model(mini(0), config(ExclusivityMode::Relaxed, 0.0));
  const auto& z = a.milp.columns[a.index.at({VarKind::Z, 0})];
  CHECK(z.upper == 0.0);
  const model::PlanResult r = solve_plan(mini(0), config(ExclusivityMode::Relaxed, 0.0));
  REQUIRE(r.solution);
  CHECK(r.solution->scenarios[0].z == 0.0);
}

TEST_CASE("EV outside the day is a model error") {
  PlanningInputs in = mini(1);
  in.scenarios.scenarios[0].ev[0] = EvRecord{1, 3, 0.5};
  CHECK_THROWS_AS(assemble_model(in, config(ExclusivityMode::Relaxed)), ModelError);
  in.scenarios.scenarios[0].ev[0] = EvRecord{1, 1, 0.5};
  CHECK_THROWS_AS(assemble_model(in, config(ExclusivityMode::Relaxed)), ModelError);
  in.scenarios.scenarios[0].ev.clear();
  CHECK_THROWS_AS(assemble_model(in, config(ExclusivityMode::Relaxed)), ModelError);
}

TEST_CASE("configuration validation") {
  ModelConfig c;
  c.zeta = 1.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c.zeta = -0.1;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  c.zeta = 0.0;
  c.global_big_m = 0.0;
  CHECK_THROWS_AS(c.validate(), InvalidParameter);
  CHECK(parse_exclusivity_mode("binary") == ExclusivityMode::Binary);
  CHECK(parse_exclusivity_mode("relaxed") == ExclusivityMode::Relaxed);
  CHECK_FALSE(parse_exclusivity_mode("fast").has_value());
}

TEST_CASE("assembly is deterministic and column names are unique") {
  const PlanningInputs in = test::load_fixture("small");
  const AssembledModel a = assemble_model(in, config(ExclusivityMode::Binary));
  const AssembledModel b = assemble_model(in, config(ExclusivityMode::Binary));
  CHECK(a.milp == b.milp);
  CHECK_NOTHROW(a.milp.validate());
  for (int id = 0; id < a.index.size(); ++id) CHECK(a.index.at(a.index.key(id)) == id);
}

TEST_CASE("tiny fixture matches the lattice oracle") {
  const PlanningInputs in = test::load_fixture("tiny");
  const test::LatticeResult oracle = test::lattice_optimum(in, 0.5);
  for (auto mode : {ExclusivityMode::Relaxed, ExclusivityMode::Binary}) {
    const PlanResult r = solve_plan(in, config(mode, 0.5));
    REQUIRE(r.bnb.status == milp::BnbStatus::Optimal);
    REQUIRE(r.solution);
    // The lattice restricts dispatch, so it can only be above the true optimum.
    CHECK(r.bnb.objective <= oracle.best + 1e-6);
    CHECK(r.bnb.objective >= oracle.best - 1e-3);
    CHECK(r.solution->fc_units[0] == oracle.best_units);
  }
}

TEST_CASE("battery arbitrage buys in the valley") {
  const PlanningInputs in = test::load_fixture("arbitrage");
  const PlanResult r = solve_plan(in, config(ExclusivityMode::Relaxed, 0.0));
  REQUIRE(r.solution);
  const PlanSolution& p = *r.solution;
  CHECK(p.bess_capacity > 100.0);
  const ScenarioDispatch& d = p.scenarios[0];
  // Charge only in the cheapest hour, discharge only in the dearest.
  const auto& price = in.tariffs.elec_price;
  const auto cheapest = std::min_element(price.begin(), price.end()) - price.begin();
  for (std::size_t t = 0; t < price.size(); ++t) {
    if (static_cast<long>(t) != cheapest) CHECK(d.bess_ch[t] <= 1e-7);
    if (d.bess_dis[t] > 1e-7) CHECK(price[t] > price[cheapest]);
  }
  CHECK(milp::check_solution(r.model.milp, r.bnb.x).ok());
}

TEST_CASE("extracted solution mirrors the column vector") {
  const PlanningInputs in = test::load_fixture("small");
  const PlanResult r = solve_plan(in, config(ExclusivityMode::Relaxed, 0.5));
  REQUIRE(r.solution);
  const PlanSolution& p = *r.solution;
  const VarIndex& ix = r.model.index;
  const auto& x = r.bnb.x;
  CHECK(p.objective == r.bnb.objective);
  CHECK(p.bess_capacity == x[ix.at({VarKind::XEss})]);
  for (int i = 0; i < ix.dims.fuel_cells; ++i) {
    CHECK(p.fc_units[i] == x[ix.at({VarKind::XFc, -1, -1, i})]);
    CHECK(p.fc_units[i] == std::round(p.fc_units[i]));
  }
  for (int s = 0; s < ix.dims.scenarios; ++s) {
    const ScenarioDispatch& d = p.scenarios[s];
    CHECK(d.z == x[ix.at({VarKind::Z, s})]);
    for (int t = 0; t < ix.dims.hours; ++t) {
      CHECK(d.grid[t] == x[ix.at({VarKind::Grid, s, t})]);
      CHECK(d.tess_energy[t] == x[ix.at({VarKind::TessE, s, t})]);
    }
    for (int j = 0; j < ix.dims.evs; ++j) {
      const EvRecord& rec = in.scenarios.scenarios[s].ev[j];
      for (int t = 0; t < ix.dims.hours; ++t) {
        const bool parked = t >= rec.arrive_hour && t < rec.depart_hour;
        CHECK(std::isnan(d.ev_energy[j][t]) == !parked);
      }
      CHECK(d.departure_energy[j] == x[ix.at({VarKind::EvE, s, rec.depart_hour - 1, -1, j})]);
    }
  }
}

TEST_CASE("fixed first stage reproduces the optimum") {
  const PlanningInputs in = test::load_fixture("small");
  const PlanResult r = solve_plan(in, config(ExclusivityMode::Relaxed, 0.5));
  REQUIRE(r.solution);
  ModelConfig fixed = config(ExclusivityMode::Relaxed, 0.5);
  fixed.fixed_first_stage = FirstStage{r.solution->bess_capacity, r.solution->fc_units};
  const PlanResult f = solve_plan(in, fixed);
  REQUIRE(f.solution);
  CHECK(f.bnb.objective == doctest::Approx(r.bnb.objective).epsilon(1e-7));

  fixed.fixed_first_stage->fc_units.push_back(1.0);
  CHECK_THROWS_AS(assemble_model(in, fixed), ModelError);
}

TEST_CASE("unreachable departure target is diagnosed") {
  const PlanningInputs in = test::load_fixture("evshort");
  const PlanResult r = solve_plan(in, config(ExclusivityMode::Relaxed, 0.0));
  CHECK(r.bnb.status == milp::BnbStatus::Infeasible);
  CHECK_FALSE(r.solution.has_value());
  CHECK(diagnose_infeasibility(in, config(ExclusivityMode::Relaxed, 0.0)) == "EV departure chance constraint");
  const PlanResult ok = solve_plan(in, config(ExclusivityMode::Relaxed, 0.5));
  CHECK(ok.bnb.status == milp::BnbStatus::Optimal);
}

TEST_CASE("random instances satisfy the chance limit") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const PlanningInputs in = test::random_fixture(seed, 20, 4, 2);
    const PlanResult r = solve_plan(in, config(ExclusivityMode::Relaxed, 0.1));
    CAPTURE(seed);
    REQUIRE(r.solution);
    int substandard = 0;
    for (const auto& d : r.solution->scenarios) {
      bool below = false;
      for (double e : d.departure_energy) below |= e < 0.9 * in.catalog.ev.capacity - 1e-6;
      substandard += below;
    }
    CHECK(substandard <= 2);
  }
}
