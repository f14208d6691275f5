#include "hubplan/analysis/audit.hpp"

#include <cmath>
#include <limits>

#include "hubplan/model/builders.hpp"

namespace hubplan::analysis {

ChanceAudit chance_audit(const model::PlanSolution& plan, const EvFleetSpec& fleet, double zeta) {
  ChanceAudit a;
  const int n = static_cast<int>(plan.scenarios.size());
  a.limit = model::substandard_limit(n, zeta);
  const double threshold = fleet.target_departure_soc - 1e-9;
  for (int s = 0; s < n; ++s) {
    const auto& d = plan.scenarios[s];
    double worst = std::numeric_limits<double>::quiet_NaN();
    bool bad = false;
    for (std::size_t j = 0; j < d.departure_energy.size(); ++j) {
      const double soc = d.departure_energy[j] / fleet.capacity;
      if (std::isnan(worst) || soc < worst) worst = soc;
      if (soc < threshold) {
        bad = true;
        a.departures.push_back({s, static_cast<int>(j), soc});
      }
    }
    a.worst_departure_soc.push_back(worst);
    if (bad) a.substandard_scenarios.push_back(s);
  }
  a.pass = a.count() <= a.limit;
  return a;
}

nlohmann::json to_json(const ChanceAudit& a) {
  nlohmann::json deps = nlohmann::json::array();
  for (const auto& d : a.departures) deps.push_back({{"scenario", d.scenario}, {"ev", d.ev}, {"soc", d.soc}});
  nlohmann::json worst = nlohmann::json::array();
  for (double w : a.worst_departure_soc) {
    if (std::isnan(w)) {
      worst.push_back(nullptr);
    } else {
      worst.push_back(w);
    }
  }
  return {{"substandard_count", a.count()},
          {"limit", a.limit},
          {"pass", a.pass},
          {"substandard_scenarios", a.substandard_scenarios},
          {"violations", deps},
          {"worst_departure_soc", worst}};
}

}  // namespace hubplan::analysis
