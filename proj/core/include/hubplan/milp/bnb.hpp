#pragma once

#include <string_view>
#include <vector>

#include "hubplan/milp/lp.hpp"

namespace hubplan::milp {

struct BnbOptions {
  LpOptions lp;
  double int_tol = 1e-6;
  double rel_gap = 1e-6;
  double abs_gap = 1e-9;
  long max_nodes = 200'000;
  double time_limit_s = kInf;
  /// Re-solve child nodes from the parent's optimal basis.
  bool warm_start = true;
  /// Run a rounding dive at the root and periodically until an incumbent exists.
  bool dive = true;
  int dive_every = 100;
};

enum class BnbStatus { Optimal, Infeasible, GapLimit, NodeLimit };

std::string_view to_string(BnbStatus s) noexcept;

struct BnbSolution {
  BnbStatus status = BnbStatus::Infeasible;
  bool has_incumbent = false;
  double objective = kInf;     // incumbent
  double best_bound = -kInf;
  double root_bound = -kInf;   // LP relaxation objective
  long nodes = 0;
  long lp_iterations = 0;
  double wall_seconds = 0.0;
  std::vector<double> x;

  /// Relative gap between incumbent and best bound; 0 when proven.
  double gap() const noexcept;
};

/// Best-first branch-and-bound on the integer columns. Nodes are ordered by
/// (LP bound, node id); branching picks the most fractional column with the
/// lowest id on ties.
BnbSolution branch_and_bound(const MilpModel& model, const BnbOptions& options = {});

}  // namespace hubplan::milp
