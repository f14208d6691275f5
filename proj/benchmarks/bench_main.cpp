#include <benchmark/benchmark.h>

#include <filesystem>

#include "hubplan/core/io.hpp"
#include "hubplan/milp/lp.hpp"
#include "hubplan/milp/mps.hpp"
#include "hubplan/model/assemble.hpp"
#include "hubplan/scengen/hmm.hpp"

using namespace hubplan;
namespace fs = std::filesystem;

namespace {

PlanningInputs desk() {
  const fs::path ex = fs::path(HUBPLAN_DATA_DIR) / "example";
  PlanningInputs in;
  in.catalog = read_catalog(ex / "catalog.json");
  in.tariffs = read_tariffs(ex / "catalog.json");
  TimeGrid g;
  g.planning_years = in.catalog.planning_years;
  g.discount_rate = in.catalog.discount_rate;
  in.scenarios = read_scenario_set(ex / "desk" / kSeriesFileName, ex / "desk" / kEvFileName, g);
  return in;
}

const milp::MilpModel& desk_model() {
  static const milp::MilpModel m = model::assemble_model(desk(), model::ModelConfig{}).milp;
  return m;
}

void BM_DeskRelaxation(benchmark::State& state) {
  const milp::MilpModel& m = desk_model();
  for (auto _ : state) benchmark::DoNotOptimize(milp::solve_lp(m).objective);
}
BENCHMARK(BM_DeskRelaxation)->Unit(benchmark::kMillisecond);

void BM_Assemble(benchmark::State& state) {
  const PlanningInputs in = desk();
  for (auto _ : state) benchmark::DoNotOptimize(model::assemble_model(in, model::ModelConfig{}).milp.num_cols());
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_WriteMps(benchmark::State& state) {
  const milp::MilpModel& m = desk_model();
  for (auto _ : state) benchmark::DoNotOptimize(milp::write_mps(m).size());
}
BENCHMARK(BM_WriteMps)->Unit(benchmark::kMillisecond);

void BM_Hmm(benchmark::State& state) {
  const std::size_t dims = static_cast<std::size_t>(state.range(1));
  scengen::MomentTargets t;
  for (std::size_t j = 0; j < dims; ++j) {
    t.mean.push_back(static_cast<double>(j));
    t.variance.push_back(1.0 + 0.5 * static_cast<double>(j));
    t.skewness.push_back(0.2);
    t.kurtosis.push_back(3.5);
  }
  t.correlation = scengen::Matrix::identity(dims);
  for (std::size_t j = 0; j + 1 < dims; ++j) t.correlation(j, j + 1) = t.correlation(j + 1, j) = 0.3;
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(scengen::hmm_generate(t, static_cast<std::size_t>(state.range(0)), seed++).values.rows);
  }
}
BENCHMARK(BM_Hmm)->Args({100, 4})->Args({500, 4})->Args({500, 24})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
