#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "hubplan/core/types.hpp"
#include "hubplan/scengen/hmm.hpp"
#include "hubplan/scengen/matrix.hpp"

namespace hubplan::scengen {

/// Raw generator output for one vehicle before rounding.
struct RawEvFields {
  double arrive = 0.0;
  double depart = 0.0;
  double soc = 0.0;
};

/// Rounds hours to the nearest integer, clamps arrival to [0, T-1] and
/// departure to [1, T], repairs depart <= arrive to arrive + 1, and clamps the
/// state of charge to the fleet's window.
EvRecord discretize_ev_fields(const RawEvFields& raw, int hours_per_day, const EvFleetSpec& fleet);

/// Column layout of a scenario as a flat vector: electric load for every hour,
/// then heat load, then PV, then (arrive, depart, soc) per vehicle.
struct ScenarioLayout {
  int hours = 24;
  int n_ev = 0;

  int dims() const noexcept { return 3 * hours + 3 * n_ev; }
  int elec(int t) const noexcept { return t; }
  int heat(int t) const noexcept { return hours + t; }
  int pv(int t) const noexcept { return 2 * hours + t; }
  int ev(int k, int field) const noexcept { return 3 * hours + 3 * k + field; }
};

/// History days as rows of the flat layout. Every day must carry the same
/// number of vehicles.
Matrix flatten_history(const ScenarioSet& history, ScenarioLayout* layout);

enum class CorrelationStructure { Full, Block };

struct GenerateOptions {
  std::size_t n_scenarios = 100;
  std::uint64_t seed = 7;
  HmmOptions hmm;
  CorrelationStructure structure = CorrelationStructure::Block;
};

struct GeneratedScenarios {
  ScenarioSet set;
  RawSampleMatrix raw;             // varying dimensions only
  std::vector<int> varying_dims;   // flat-layout index of each raw column
  std::vector<int> constant_dims;  // bypassed, set to the historical value
  double psd_shrinkage = 0.0;
};

/// Estimates targets from history and generates scenarios. Constant history
/// dimensions (night-time PV, for instance) bypass moment matching. Loads are
/// clamped at zero and PV to [0, pv_cap].
GeneratedScenarios generate_scenarios(const ScenarioSet& history, const EvFleetSpec& fleet,
                                      double pv_cap, const GenerateOptions& options);

/// Block structure keeps correlations inside the electric, heat, PV and EV
/// blocks and between each load block and PV; every other entry is zeroed.
Matrix block_correlation(const Matrix& full, const ScenarioLayout& layout,
                         const std::vector<int>& dims);

nlohmann::json generation_log_json(const GeneratedScenarios& g);

}  // namespace hubplan::scengen
