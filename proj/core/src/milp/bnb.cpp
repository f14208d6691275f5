#include "hubplan/milp/bnb.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <tuple>

namespace hubplan::milp {

namespace {

struct BoundChange {
  int col;
  double lower;
  double upper;
};

struct Node {
  long id = 0;
  double bound = -kInf;
  std::vector<BoundChange> changes;
  std::shared_ptr<const Basis> basis;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    return std::tie(a.bound, a.id) > std::tie(b.bound, b.id);
  }
};

class Search {
 public:
  Search(const MilpModel& model, const BnbOptions& opt)
      : opt_(opt), engine_(model, opt.lp), start_(std::chrono::steady_clock::now()) {
    for (int j = 0; j < model.num_cols(); ++j) {
      root_lo_.push_back(model.columns[j].lower);
      root_hi_.push_back(model.columns[j].upper);
      if (model.columns[j].is_integer()) {
        int_cols_.push_back(j);
        // Integer bounds are rounded inward once so branching stays integral.
        root_lo_[j] = std::ceil(root_lo_[j] - opt.int_tol);
        root_hi_[j] = std::floor(root_hi_[j] + opt.int_tol);
      }
    }
  }

  BnbSolution run() {
    BnbSolution out;
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    open.push(Node{0, -kInf, {}, nullptr});
    long next_id = 1;
    bool stopped = false;
    double pruned_by_gap = kInf;
    std::vector<double> lo;
    std::vector<double> hi;

    while (!open.empty()) {
      if (out.nodes >= opt_.max_nodes || elapsed() > opt_.time_limit_s) {
        stopped = true;
        break;
      }
      Node node = open.top();
      open.pop();
      if (node.bound >= cutoff()) {
        note_gap_prune(node.bound, &pruned_by_gap);
        continue;
      }
      lo = root_lo_;
      hi = root_hi_;
      for (const auto& c : node.changes) {
        lo[c.col] = c.lower;
        hi[c.col] = c.upper;
      }
      auto basis = std::make_shared<Basis>();
      const LpSolution lp = engine_.solve(lo, hi, opt_.warm_start ? node.basis.get() : nullptr,
                                          basis.get());
      ++out.nodes;
      out.lp_iterations += lp.iterations;
      if (lp.status == LpStatus::Unbounded) {
        throw Error("LP relaxation is unbounded");
      }
      if (lp.status == LpStatus::IterationLimit) {
        open.push(node);
        stopped = true;
        break;
      }
      if (node.id == 0 && lp.status == LpStatus::Optimal) out.root_bound = lp.objective;
      if (lp.status != LpStatus::Optimal) continue;
      if (lp.objective >= cutoff()) {
        note_gap_prune(lp.objective, &pruned_by_gap);
        continue;
      }

      const int branch = pick_branch(lp.x);
      if (branch < 0) {
        accept(lp.objective, lp.x);
        continue;
      }
      if (opt_.dive && !has_incumbent_ &&
          (node.id == 0 || (opt_.dive_every > 0 && out.nodes % opt_.dive_every == 0))) {
        dive(lo, hi, lp, basis, &out.lp_iterations);
      }

      const double v = lp.x[branch];
      std::shared_ptr<const Basis> shared = basis;
      Node down{next_id++, lp.objective, node.changes, shared};
      down.changes.push_back({branch, lo[branch], std::floor(v)});
      Node up{next_id++, lp.objective, std::move(node.changes), shared};
      up.changes.push_back({branch, std::ceil(v), hi[branch]});
      open.push(std::move(down));
      open.push(std::move(up));
    }

    out.has_incumbent = has_incumbent_;
    out.objective = incumbent_;
    out.x = best_x_;
    double bound = has_incumbent_ ? incumbent_ : kInf;
    bound = std::min(bound, pruned_by_gap);
    if (stopped) {
      auto rest = open;
      while (!rest.empty()) {
        bound = std::min(bound, rest.top().bound);
        rest.pop();
      }
    }
    out.best_bound = bound;
    out.wall_seconds = elapsed();
    if (stopped) {
      out.status = BnbStatus::NodeLimit;
    } else if (!has_incumbent_) {
      out.status = BnbStatus::Infeasible;
    } else {
      out.status = out.gap() <= 1e-6 ? BnbStatus::Optimal : BnbStatus::GapLimit;
    }
    return out;
  }

 private:
  double elapsed() const {
    const std::chrono::duration<double> d = std::chrono::steady_clock::now() - start_;
    return d.count();
  }

  double cutoff() const {
    if (!has_incumbent_) return kInf;
    return incumbent_ - std::max(opt_.abs_gap, opt_.rel_gap * std::abs(incumbent_));
  }

  /// Nodes discarded only because of the gap tolerance still bound the optimum.
  void note_gap_prune(double bound, double* pruned) const {
    if (bound < incumbent_) *pruned = std::min(*pruned, bound);
  }

  int pick_branch(const std::vector<double>& x) const {
    int best = -1;
    double best_frac = opt_.int_tol;
    for (int j : int_cols_) {
      const double f = std::abs(x[j] - std::round(x[j]));
      if (f > best_frac) {
        best_frac = f;
        best = j;
      }
    }
    return best;
  }

  void accept(double objective, const std::vector<double>& x) {
    if (has_incumbent_ && objective >= incumbent_) return;
    has_incumbent_ = true;
    incumbent_ = objective;
    best_x_ = x;
  }

  /// Fixes the least fractional integer column to its nearest value and
  /// re-solves until the relaxation is integral or fails.
  void dive(std::vector<double> lo, std::vector<double> hi, LpSolution lp,
            std::shared_ptr<Basis> basis, long* iterations) {
    const std::size_t max_steps = int_cols_.size() + 1;
    for (std::size_t step = 0; step < max_steps; ++step) {
      int pick = -1;
      double pick_frac = 1.0;
      for (int j : int_cols_) {
        const double f = std::abs(lp.x[j] - std::round(lp.x[j]));
        if (f > opt_.int_tol && f < pick_frac) {
          pick_frac = f;
          pick = j;
        }
      }
      if (pick < 0) {
        accept(lp.objective, lp.x);
        return;
      }
      const double target = std::round(lp.x[pick]);
      lo[pick] = target;
      hi[pick] = target;
      auto next = std::make_shared<Basis>();
      lp = engine_.solve(lo, hi, basis.get(), next.get());
      *iterations += lp.iterations;
      if (lp.status != LpStatus::Optimal || lp.objective >= cutoff()) return;
      basis = std::move(next);
    }
  }

  const BnbOptions& opt_;
  SimplexEngine engine_;
  std::chrono::steady_clock::time_point start_;
  std::vector<double> root_lo_;
  std::vector<double> root_hi_;
  std::vector<int> int_cols_;
  bool has_incumbent_ = false;
  double incumbent_ = kInf;
  std::vector<double> best_x_;
};

}  // namespace

double BnbSolution::gap() const noexcept {
  if (!has_incumbent) return kInf;
  const double diff = objective - best_bound;
  if (diff <= 0.0) return 0.0;
  return diff / std::max(std::abs(objective), 1e-10);
}

BnbSolution branch_and_bound(const MilpModel& model, const BnbOptions& options) {
  Search search(model, options);
  return search.run();
}

std::string_view to_string(BnbStatus s) noexcept {
  switch (s) {
    case BnbStatus::Optimal:
      return "optimal";
    case BnbStatus::Infeasible:
      return "infeasible";
    case BnbStatus::GapLimit:
      return "gap_limit";
    case BnbStatus::NodeLimit:
      return "node_limit";
  }
  return "?";
}

}  // namespace hubplan::milp
