#include "fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "hubplan/core/io.hpp"

#ifndef HUBPLAN_DATA_DIR
#error "HUBPLAN_DATA_DIR must be defined by the build"
#endif

namespace hubplan::test {

namespace fs = std::filesystem;

fs::path data_dir() { return fs::path(HUBPLAN_DATA_DIR); }

PlanningInputs load_inputs(const fs::path& dir) {
  PlanningInputs in;
  in.catalog = read_catalog(dir / "catalog.json");
  in.tariffs = read_tariffs(dir / "catalog.json");
  TimeGrid g;
  g.planning_years = in.catalog.planning_years;
  g.discount_rate = in.catalog.discount_rate;
  g.hours_per_day = static_cast<int>(in.tariffs.elec_price.size());
  in.scenarios = read_scenario_set(dir / kSeriesFileName, dir / kEvFileName, g);
  return in;
}

PlanningInputs load_fixture(const std::string& name) { return load_inputs(data_dir() / "fixtures" / name); }

std::vector<std::string> solvable_fixture_names() { return {"tiny", "arbitrage", "evshort", "small"}; }

EquipmentCatalog example_catalog() { return read_catalog(data_dir() / "example" / "catalog.json"); }

PlanningInputs desk_inputs(double carbon_tax) {
  const fs::path ex = data_dir() / "example";
  PlanningInputs in;
  in.catalog = read_catalog(ex / "catalog.json");
  in.tariffs = read_tariffs(ex / "catalog.json");
  in.tariffs.carbon_tax = carbon_tax;
  TimeGrid g;
  g.planning_years = in.catalog.planning_years;
  g.discount_rate = in.catalog.discount_rate;
  in.scenarios = read_scenario_set(ex / "desk" / kSeriesFileName, ex / "desk" / kEvFileName, g);
  return in;
}

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Rng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

PlanningInputs random_fixture(std::uint64_t seed, int n_scenarios, int hours, int n_ev) {
  Rng rng(seed);
  PlanningInputs in;
  EquipmentCatalog& c = in.catalog;

  FcSpec gas;
  gas.id = FcType::PemGas;
  gas.invest_cost = rng.uniform(1.0, 40.0);
  gas.gas_to_elec = 0.34;
  gas.gas_to_heat = 0.5;
  gas.max_elec = 4.2;
  gas.max_heat = 6.2;
  gas.fuel_price = 0.257;
  gas.fuel_emission = 0.0002;
  gas.max_units = 10;
  c.fuel_cells.push_back(gas);
  if (rng.coin()) {
    FcSpec h2;
    h2.id = FcType::PemH2;
    h2.invest_cost = rng.uniform(5.0, 60.0);
    h2.gas_to_elec = 0.5;
    h2.gas_to_heat = 0.45;
    h2.max_elec = 20.0;
    h2.max_heat = 20.0;
    h2.fuel_price = rng.uniform(0.2, 0.6);
    h2.max_units = 2;
    c.fuel_cells.push_back(h2);
  }
  c.bess.invest_cost = rng.uniform(0.005, 0.2);
  c.bess.max_capacity = rng.coin(0.7) ? rng.uniform(50.0, 300.0) : 0.0;
  c.tess.capacity = rng.coin(0.7) ? rng.uniform(5.0, 50.0) : 0.0;
  c.ev.n_ev = n_ev;
  c.ev.capacity = rng.uniform(20.0, 60.0);
  c.ev.charger_power = rng.uniform(3.0, 7.0);

  TariffSet& t = in.tariffs;
  const double levels[3] = {0.297, 0.674, 1.02};
  for (int h = 0; h < hours; ++h) {
    t.elec_price.push_back(levels[rng.integer(0, 2)]);
    t.grid_emission.push_back(rng.uniform(0.0006, 0.0008));
  }
  t.carbon_tax = rng.uniform(0.0, 1000.0);
  t.soc_penalty = rng.uniform(0.01, 0.5);
  t.grid_cap = 1000.0;
  t.pv_cap = 200.0;

  ScenarioSet& set = in.scenarios;
  set.grid.hours_per_day = hours;
  set.grid.n_scenarios = n_scenarios;
  set.grid.planning_years = c.planning_years;
  set.grid.discount_rate = c.discount_rate;
  const auto& ev = c.ev;
  for (int s = 0; s < n_scenarios; ++s) {
    Scenario sc;
    for (int h = 0; h < hours; ++h) {
      sc.elec_load.push_back(rng.uniform(30.0, 150.0));
      sc.heat_load.push_back(rng.uniform(0.0, 30.0));
      const double sun = std::sin(3.141592653589793 * (h + 0.5) / hours);
      sc.pv_avail.push_back(std::max(0.0, rng.uniform(0.0, 120.0) * sun));
    }
    for (int j = 0; j < n_ev; ++j) {
      EvRecord r;
      r.arrive_hour = rng.integer(0, hours - 2);
      r.depart_hour = rng.integer(r.arrive_hour + 1, hours);
      // Keep the target reachable at full charger power.
      const double reach = ev.charger_power * (r.depart_hour - r.arrive_hour) / ev.capacity;
      const double lowest = std::max(ev.soc_min, ev.target_departure_soc - reach + 1e-3);
      r.initial_soc = std::min(ev.soc_max, rng.uniform(lowest, std::max(lowest, 0.8)));
      sc.ev.push_back(r);
    }
    set.scenarios.push_back(std::move(sc));
  }
  return in;
}

milp::MilpModel random_milp(std::uint64_t seed, const RandomMilpShape& shape) {
  using namespace milp;
  Rng rng(seed);
  auto coef = [&] {
    if (shape.fractional) return rng.uniform(-10.0, 10.0) * std::pow(10.0, rng.integer(-6, 6));
    return static_cast<double>(rng.integer(-5, 5));
  };
  MilpModel m;
  m.name = "R" + std::to_string(seed);
  for (int j = 0; j < shape.cols; ++j) {
    Column c;
    c.name = "x" + std::to_string(j);
    c.cost = coef();
    const int kind = shape.integers ? rng.integer(0, 2) : 0;
    c.kind = kind == 0 ? ColumnKind::Continuous : kind == 1 ? ColumnKind::Integer : ColumnKind::Binary;
    if (c.kind == ColumnKind::Binary) {
      c.lower = 0.0;
      c.upper = 1.0;
    } else if (shape.finite_bounds) {
      c.lower = 0.0;
      c.upper = rng.integer(1, shape.max_upper);
    } else {
      switch (rng.integer(0, 4)) {
        case 0: c.lower = -kInf; c.upper = kInf; break;
        case 1: c.lower = -kInf; c.upper = coef(); break;
        case 2: c.lower = coef(); c.upper = kInf; break;
        case 3: c.lower = c.upper = coef(); break;
        default:
          c.lower = coef();
          c.upper = c.lower + std::abs(coef());
      }
    }
    m.add_column(c);
  }
  for (int i = 0; i < shape.rows; ++i) {
    Row r;
    r.name = "r" + std::to_string(i);
    for (int j = 0; j < shape.cols; ++j) {
      if (rng.coin(0.6)) {
        const double v = coef();
        if (v != 0.0) r.entries.push_back({j, v});
      }
    }
    const int sense = rng.integer(0, shape.finite_bounds ? 1 : 2);
    r.sense = sense == 0 ? Sense::LessEqual : sense == 1 ? Sense::GreaterEqual : Sense::Equal;
    const double mag = shape.fractional ? std::abs(coef()) : rng.integer(0, 8);
    r.rhs = r.sense == Sense::GreaterEqual ? -mag : r.sense == Sense::LessEqual ? mag : coef();
    m.add_row(r);
  }
  return m;
}

}  // namespace hubplan::test
