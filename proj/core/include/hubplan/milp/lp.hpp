#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hubplan/core/error.hpp"
#include "hubplan/milp/model.hpp"

namespace hubplan::milp {

struct LpOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double pivot_tol = 1e-9;
  int refactor_interval = 50;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 1000;
  long max_iterations = 2'000'000;
  double time_limit_s = kInf;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus s) noexcept;

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double objective = 0.0;
  std::vector<double> x;       // structural column values
  std::vector<double> duals;   // one per row
  long iterations = 0;
};

/// Basis factorisation failed; `row` is the basis position that could not be
/// pivoted, or -1 when unknown.
class FactorizationError : public Error {
 public:
  FactorizationError(int row, const std::string& what) : Error(what), row_(row) {}
  int row() const noexcept { return row_; }

 private:
  int row_;
};

/// Basis snapshot used to warm start a re-solve after bound changes.
struct Basis {
  std::vector<int> head;              // basic variable per row position
  std::vector<signed char> status;    // per variable: structurals then row logicals
};

/// Bounded-variable primal simplex over a fixed constraint matrix. Column bounds
/// may change between solves, which is what branch-and-bound needs.
class SimplexEngine {
 public:
  SimplexEngine(const MilpModel& model, LpOptions options);
  ~SimplexEngine();
  SimplexEngine(SimplexEngine&&) noexcept;
  SimplexEngine& operator=(SimplexEngine&&) noexcept;

  LpSolution solve(std::span<const double> lower, std::span<const double> upper,
                   const Basis* warm = nullptr, Basis* final_basis = nullptr) const;

  /// Solve with the model's own column bounds.
  LpSolution solve() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Solves the LP relaxation (integrality dropped).
LpSolution solve_lp(const MilpModel& model, const LpOptions& options = {});

}  // namespace hubplan::milp
