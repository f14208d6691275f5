#include "hubplan/scengen/generate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hubplan/core/error.hpp"
#include "hubplan/scengen/correlation.hpp"

namespace hubplan::scengen {

EvRecord discretize_ev_fields(const RawEvFields& raw, int hours_per_day, const EvFleetSpec& fleet) {
  EvRecord r;
  r.arrive_hour = static_cast<int>(std::clamp(std::round(raw.arrive), 0.0, hours_per_day - 1.0));
  r.depart_hour = static_cast<int>(std::clamp(std::round(raw.depart), 1.0, static_cast<double>(hours_per_day)));
  if (r.depart_hour <= r.arrive_hour) r.depart_hour = r.arrive_hour + 1;
  r.initial_soc = std::clamp(raw.soc, fleet.soc_min, fleet.soc_max);
  return r;
}

Matrix flatten_history(const ScenarioSet& history, ScenarioLayout* layout) {
  if (history.scenarios.empty()) throw InvalidParameter("history contains no days");
  ScenarioLayout lay;
  lay.hours = history.grid.hours_per_day;
  lay.n_ev = static_cast<int>(history.scenarios.front().ev.size());
  Matrix x(history.scenarios.size(), static_cast<std::size_t>(lay.dims()));
  for (std::size_t i = 0; i < history.scenarios.size(); ++i) {
    const Scenario& s = history.scenarios[i];
    if (static_cast<int>(s.ev.size()) != lay.n_ev) {
      throw InvalidParameter("history day " + std::to_string(i) + " has " + std::to_string(s.ev.size()) +
                             " vehicles, expected " + std::to_string(lay.n_ev));
    }
    for (int t = 0; t < lay.hours; ++t) {
      x(i, lay.elec(t)) = s.elec_load[t];
      x(i, lay.heat(t)) = s.heat_load[t];
      x(i, lay.pv(t)) = s.pv_avail[t];
    }
    for (int k = 0; k < lay.n_ev; ++k) {
      x(i, lay.ev(k, 0)) = s.ev[k].arrive_hour;
      x(i, lay.ev(k, 1)) = s.ev[k].depart_hour;
      x(i, lay.ev(k, 2)) = s.ev[k].initial_soc;
    }
  }
  if (layout) *layout = lay;
  return x;
}

namespace {

enum Block { kElec, kHeat, kPv, kEv };

Block block_of(int dim, const ScenarioLayout& lay) {
  if (dim < lay.hours) return kElec;
  if (dim < 2 * lay.hours) return kHeat;
  if (dim < 3 * lay.hours) return kPv;
  return kEv;
}

bool kept(Block a, Block b) {
  if (a == b) return true;
  if (a > b) std::swap(a, b);
  return (a == kElec || a == kHeat) && b == kPv;
}

}  // namespace

Matrix block_correlation(const Matrix& full, const ScenarioLayout& layout, const std::vector<int>& dims) {
  Matrix out = full;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (!kept(block_of(dims[i], layout), block_of(dims[k], layout))) out(i, k) = 0.0;
    }
  }
  return out;
}

GeneratedScenarios generate_scenarios(const ScenarioSet& history, const EvFleetSpec& fleet, double pv_cap,
                                      const GenerateOptions& options) {
  ScenarioLayout lay;
  const Matrix hist = flatten_history(history, &lay);
  if (lay.n_ev != fleet.n_ev) {
    throw InvalidParameter("history has " + std::to_string(lay.n_ev) + " vehicles per day but the fleet has " +
                           std::to_string(fleet.n_ev));
  }
  if (hist.rows < 4) throw InvalidParameter("history needs at least 4 days");

  GeneratedScenarios g;
  std::vector<double> constant_value(hist.cols, 0.0);
  for (std::size_t j = 0; j < hist.cols; ++j) {
    const auto col = hist.column(j);
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*lo))) {
      g.constant_dims.push_back(static_cast<int>(j));
      constant_value[j] = *lo;
    } else {
      g.varying_dims.push_back(static_cast<int>(j));
    }
  }

  Matrix values(options.n_scenarios, hist.cols);
  if (!g.varying_dims.empty()) {
    Matrix sub(hist.rows, g.varying_dims.size());
    for (std::size_t k = 0; k < g.varying_dims.size(); ++k) sub.set_column(k, hist.column(g.varying_dims[k]));
    MomentTargets targets = sample_moments(sub);
    if (options.structure == CorrelationStructure::Block) {
      targets.correlation = block_correlation(targets.correlation, lay, g.varying_dims);
    }
    targets.correlation = shrink_to_psd(targets.correlation, &g.psd_shrinkage);
    g.raw = hmm_generate(targets, options.n_scenarios, options.seed, options.hmm);
    for (std::size_t k = 0; k < g.varying_dims.size(); ++k) {
      values.set_column(static_cast<std::size_t>(g.varying_dims[k]), g.raw.values.column(k));
    }
  } else {
    g.raw.seed = options.seed;
    g.raw.converged = true;
  }
  for (int j : g.constant_dims) {
    for (std::size_t i = 0; i < values.rows; ++i) values(i, j) = constant_value[j];
  }

  g.set.grid = history.grid;
  g.set.grid.n_scenarios = static_cast<int>(options.n_scenarios);
  g.set.scenarios.resize(options.n_scenarios);
  for (std::size_t i = 0; i < options.n_scenarios; ++i) {
    Scenario& s = g.set.scenarios[i];
    s.elec_load.resize(lay.hours);
    s.heat_load.resize(lay.hours);
    s.pv_avail.resize(lay.hours);
    for (int t = 0; t < lay.hours; ++t) {
      s.elec_load[t] = std::max(0.0, values(i, lay.elec(t)));
      s.heat_load[t] = std::max(0.0, values(i, lay.heat(t)));
      s.pv_avail[t] = std::clamp(values(i, lay.pv(t)), 0.0, pv_cap);
    }
    s.ev.resize(lay.n_ev);
    for (int k = 0; k < lay.n_ev; ++k) {
      const RawEvFields raw{values(i, lay.ev(k, 0)), values(i, lay.ev(k, 1)), values(i, lay.ev(k, 2))};
      s.ev[k] = discretize_ev_fields(raw, lay.hours, fleet);
    }
  }
  return g;
}

nlohmann::json generation_log_json(const GeneratedScenarios& g) {
  nlohmann::json doc = convergence_log_json(g.raw);
  doc["scenarios"] = g.set.scenarios.size();
  doc["varying_dims"] = g.varying_dims;
  doc["constant_dims"] = g.constant_dims;
  doc["psd_shrinkage"] = g.psd_shrinkage;
  return doc;
}

}  // namespace hubplan::scengen
