#include "hubplan/analysis/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <thread>

#include "hubplan/analysis/audit.hpp"
#include "hubplan/model/solve.hpp"

namespace hubplan::analysis {

std::vector<SummaryRow> SweepResult::rows() const {
  std::vector<SummaryRow> out;
  for (const auto& l : levels) out.push_back(l.row);
  return out;
}

bool SweepResult::totals_non_decreasing(double tol) const {
  std::vector<const SweepLevel*> solved;
  for (const auto& l : levels) {
    if (l.ok) solved.push_back(&l);
  }
  std::stable_sort(solved.begin(), solved.end(),
                   [](const SweepLevel* a, const SweepLevel* b) { return a->carbon_tax < b->carbon_tax; });
  for (std::size_t k = 1; k < solved.size(); ++k) {
    const double prev = solved[k - 1]->row.costs.total;
    const double cur = solved[k]->row.costs.total;
    if (cur < prev - tol * std::max(1.0, std::abs(prev))) return false;
  }
  return true;
}

namespace {

SweepLevel solve_level(const PlanningInputs& base, double tax, const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SweepLevel level;
  level.carbon_tax = tax;
  level.row.carbon_tax = tax;
  try {
    PlanningInputs inputs = base;
    inputs.tariffs.carbon_tax = tax;
    const model::PlanResult res = model::solve_plan(inputs, options.model, options.solver);
    level.status = res.bnb.status;
    level.nodes = res.bnb.nodes;
    level.row.status = std::string(milp::to_string(res.bnb.status));
    if (!res.solution) {
      level.error = "no feasible plan (" + level.row.status + ")";
      return level;
    }
    const auto& plan = *res.solution;
    level.objective = res.bnb.objective;
    level.gap = res.bnb.gap();
    level.row.fc_units = plan.fc_units;
    level.row.bess_capacity = plan.bess_capacity;
    level.row.substandard = chance_audit(plan, inputs.catalog.ev, options.model.zeta).count();
    level.row.costs = cost_breakdown(plan, inputs, options.model.zeta, res.model.annualization);
    level.ok = true;
    level.row.ok = true;
  } catch (const std::exception& e) {
    level.error = e.what();
    level.row.status = "error";
  }
  level.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return level;
}

}  // namespace

SweepResult sweep_carbon_tax(const PlanningInputs& base, const std::vector<double>& taxes,
                             const SweepOptions& options) {
  SweepResult out;
  out.levels.resize(taxes.size());
  const int jobs = std::clamp(options.jobs, 1, std::max(1, static_cast<int>(taxes.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < taxes.size(); k = next++) {
      out.levels[k] = solve_level(base, taxes[k], options);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace hubplan::analysis
