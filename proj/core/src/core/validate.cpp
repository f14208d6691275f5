#include "hubplan/core/validate.hpp"

#include <cmath>
#include <sstream>

namespace hubplan {

namespace {

class Collector {
 public:
  void add(Violation v) { out_.push_back(std::move(v)); }

  void require(bool ok, std::string field, std::string message, int s = -1, int h = -1, int j = -1) {
    if (!ok) add({s, h, j, std::move(field), std::move(message)});
  }

  std::vector<Violation> take() { return std::move(out_); }

 private:
  std::vector<Violation> out_;
};

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

void check_efficiency(Collector& c, const std::string& prefix, double eta_ch, double eta_dis) {
  c.require(eta_ch > 0.0 && eta_ch <= 1.0, prefix + ".eta_ch", "efficiency must lie in (0, 1]");
  c.require(eta_dis > 0.0 && eta_dis <= 1.0, prefix + ".eta_dis", "efficiency must lie in (0, 1]");
}

void check_soc_window(Collector& c, const std::string& prefix, double lo, double hi) {
  c.require(lo >= 0.0 && lo < hi && hi <= 1.0, prefix + ".soc_min/soc_max",
            "need 0 <= soc_min < soc_max <= 1");
}

}  // namespace

std::string describe(const Violation& v) {
  std::ostringstream out;
  if (v.scenario >= 0) out << "scenario " << v.scenario << ' ';
  if (v.hour >= 0) out << "hour " << v.hour << ' ';
  if (v.ev >= 0) out << "ev " << v.ev << ' ';
  out << v.field << ": " << v.message;
  return out.str();
}

std::vector<Violation> validate_catalog(const EquipmentCatalog& cat) {
  Collector c;
  c.require(cat.planning_years >= 1, "planning.planning_years", "must be >= 1");
  c.require(cat.discount_rate >= 0.0 && cat.discount_rate < 1.0, "planning.discount_rate",
            "must lie in [0, 1)");
  for (std::size_t k = 0; k < cat.fuel_cells.size(); ++k) {
    const auto& fc = cat.fuel_cells[k];
    const std::string p = "fuel_cells[" + std::to_string(k) + "]";
    for (double v : {fc.invest_cost, fc.gas_to_elec, fc.gas_to_heat, fc.max_elec, fc.max_heat,
                     fc.fuel_price, fc.fuel_emission}) {
      if (!finite_nonneg(v)) {
        c.add({-1, -1, -1, p, "all numeric fields must be finite and >= 0"});
        break;
      }
    }
    c.require(fc.gas_to_elec + fc.gas_to_heat <= 1.0 + 1e-12, p + ".gas_to_elec+gas_to_heat",
              "conversion factors must not sum above 1");
    c.require(fc.max_units >= 0, p + ".max_units", "must be >= 0");
    for (std::size_t q = 0; q < k; ++q) {
      c.require(cat.fuel_cells[q].id != fc.id, p + ".id", "duplicate fuel cell type");
    }
  }
  const auto& b = cat.bess;
  check_efficiency(c, "bess", b.eta_ch, b.eta_dis);
  check_soc_window(c, "bess", b.soc_min, b.soc_max);
  c.require(b.rate_fraction > 0.0, "bess.rate_fraction", "must be > 0");
  c.require(finite_nonneg(b.invest_cost), "bess.invest_cost", "must be >= 0");
  c.require(finite_nonneg(b.lifetime_cycles), "bess.lifetime_cycles", "must be >= 0");
  c.require(finite_nonneg(b.max_capacity), "bess.max_capacity_kwh", "must be >= 0");

  const auto& t = cat.tess;
  c.require(finite_nonneg(t.capacity), "tess.capacity_kwh", "must be >= 0");
  c.require(finite_nonneg(t.rate_fraction), "tess.rate_fraction", "must be >= 0");
  check_efficiency(c, "tess", t.eta_ch, t.eta_dis);

  const auto& e = cat.ev;
  c.require(e.n_ev >= 0, "ev.n_ev", "must be >= 0");
  c.require(e.capacity > 0.0 || e.n_ev == 0, "ev.capacity_kwh", "must be > 0");
  c.require(finite_nonneg(e.charger_power), "ev.charger_kw", "must be >= 0");
  c.require(e.discharge_rate_fraction > 0.0, "ev.discharge_rate_fraction", "must be > 0");
  check_efficiency(c, "ev", e.eta_ch, e.eta_dis);
  check_soc_window(c, "ev", e.soc_min, e.soc_max);
  c.require(e.target_departure_soc > e.soc_min && e.target_departure_soc <= e.soc_max,
            "ev.target_departure_soc", "must lie in (soc_min, soc_max]");
  return c.take();
}

std::vector<Violation> validate_tariffs(const TariffSet& t, int hours) {
  Collector c;
  c.require(t.elec_price.size() == static_cast<std::size_t>(hours), "tariffs.elec_price",
            "needs exactly " + std::to_string(hours) + " hourly entries");
  c.require(t.grid_emission.size() == static_cast<std::size_t>(hours), "tariffs.grid_emission",
            "needs exactly " + std::to_string(hours) + " hourly entries");
  for (std::size_t h = 0; h < t.elec_price.size(); ++h) {
    c.require(finite_nonneg(t.elec_price[h]), "tariffs.elec_price", "must be >= 0", -1, static_cast<int>(h));
  }
  for (std::size_t h = 0; h < t.grid_emission.size(); ++h) {
    c.require(finite_nonneg(t.grid_emission[h]), "tariffs.grid_emission", "must be >= 0", -1,
              static_cast<int>(h));
  }
  c.require(finite_nonneg(t.carbon_tax), "tariffs.carbon_tax", "must be >= 0");
  c.require(finite_nonneg(t.soc_penalty), "tariffs.soc_penalty", "must be >= 0");
  c.require(finite_nonneg(t.grid_cap), "tariffs.grid_cap_kw", "must be >= 0");
  c.require(finite_nonneg(t.pv_cap), "tariffs.pv_cap_kw", "must be >= 0");
  return c.take();
}

std::vector<Violation> validate_scenario_set(const ScenarioSet& set, const EquipmentCatalog& cat,
                                             const TariffSet& tariffs) {
  Collector c;
  const auto& g = set.grid;
  c.require(g.hours_per_day >= 1, "grid.hours_per_day", "must be >= 1");
  c.require(g.n_scenarios >= 1, "grid.n_scenarios", "must be >= 1");
  c.require(g.planning_years >= 1, "grid.planning_years", "must be >= 1");
  c.require(g.discount_rate >= 0.0 && g.discount_rate < 1.0, "grid.discount_rate", "must lie in [0, 1)");
  c.require(set.scenarios.size() == static_cast<std::size_t>(g.n_scenarios), "scenarios",
            "count " + std::to_string(set.scenarios.size()) + " differs from n_scenarios " +
                std::to_string(g.n_scenarios));

  const int T = g.hours_per_day;
  const auto& fleet = cat.ev;
  for (std::size_t si = 0; si < set.scenarios.size(); ++si) {
    const int s = static_cast<int>(si);
    const auto& sc = set.scenarios[si];
    const auto check_len = [&](const std::vector<double>& v, const char* name) {
      const bool ok = v.size() == static_cast<std::size_t>(T);
      c.require(ok, name, "needs " + std::to_string(T) + " hourly values", s);
      return ok;
    };
    if (check_len(sc.elec_load, "elec_load_kw")) {
      for (int h = 0; h < T; ++h) {
        c.require(finite_nonneg(sc.elec_load[h]), "elec_load_kw", "load must be >= 0", s, h);
      }
    }
    if (check_len(sc.heat_load, "heat_load_kw")) {
      for (int h = 0; h < T; ++h) {
        c.require(finite_nonneg(sc.heat_load[h]), "heat_load_kw", "load must be >= 0", s, h);
      }
    }
    if (check_len(sc.pv_avail, "pv_avail_kw")) {
      for (int h = 0; h < T; ++h) {
        const double pv = sc.pv_avail[h];
        if (!finite_nonneg(pv)) {
          c.add({s, h, -1, "pv_avail_kw", "availability must be >= 0"});
        } else if (pv > tariffs.pv_cap) {
          c.add({s, h, -1, "pv_avail_kw",
                 "availability " + std::to_string(pv) + " exceeds pv_cap " + std::to_string(tariffs.pv_cap)});
        }
      }
    }
    c.require(sc.ev.size() == static_cast<std::size_t>(fleet.n_ev), "ev",
              "has " + std::to_string(sc.ev.size()) + " records, fleet has " + std::to_string(fleet.n_ev), s);
    for (std::size_t jj = 0; jj < sc.ev.size(); ++jj) {
      const int j = static_cast<int>(jj);
      const auto& r = sc.ev[jj];
      if (r.arrive_hour < 0 || r.arrive_hour >= T) {
        c.add({s, -1, j, "arrive_hour", "must lie in [0, " + std::to_string(T) + ")"});
      } else if (r.depart_hour <= r.arrive_hour) {
        c.add({s, -1, j, "depart_hour", "departure must come after arrival"});
      } else if (r.depart_hour > T) {
        c.add({s, -1, j, "depart_hour", "must not exceed " + std::to_string(T)});
      }
      c.require(std::isfinite(r.initial_soc) && r.initial_soc >= fleet.soc_min &&
                    r.initial_soc <= fleet.soc_max,
                "initial_soc", "must lie in [soc_min, soc_max]", s, -1, j);
    }
  }
  return c.take();
}

std::vector<Violation> validate_inputs(const PlanningInputs& in) {
  auto out = validate_catalog(in.catalog);
  auto t = validate_tariffs(in.tariffs, in.scenarios.grid.hours_per_day);
  auto s = validate_scenario_set(in.scenarios, in.catalog, in.tariffs);
  out.insert(out.end(), t.begin(), t.end());
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

}  // namespace hubplan
