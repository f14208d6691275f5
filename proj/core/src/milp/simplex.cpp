// Bounded-variable primal simplex.
//
// Every row i gets a logical variable r_i with A x - r = 0 and bounds taken from
// the row sense, so the slack basis B = -I is always a valid starting point.
// Phase 1 minimises the sum of bound infeasibilities of the basic variables,
// phase 2 the true objective; both share one pricing / ratio-test loop. The
// basis is factorised with a sparse LU and updated between refactorisations
// with a product-form eta file.

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "hubplan/milp/lp.hpp"

namespace hubplan::milp {

namespace {

enum : signed char { kBasic = 0, kAtLower = 1, kAtUpper = 2, kFreeZero = 3 };

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Lu = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

struct Eta {
  int pos = 0;
  double pivot = 1.0;
  std::vector<int> idx;
  std::vector<double> val;
};

struct LpData {
  int m = 0;
  int n = 0;
  std::vector<int> col_start;
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;
  std::vector<double> row_lo;
  std::vector<double> row_hi;
  std::vector<double> col_lo;
  std::vector<double> col_hi;
  LpOptions opt;

  LpData(const MilpModel& model, LpOptions options) : opt(options) {
    m = model.num_rows();
    n = model.num_cols();
    std::vector<int> count(n + 1, 0);
    for (const auto& r : model.rows) {
      for (const auto& e : r.entries) ++count[e.col + 1];
    }
    for (int j = 0; j < n; ++j) count[j + 1] += count[j];
    col_start = count;
    row_index.resize(count[n]);
    value.resize(count[n]);
    std::vector<int> fill(col_start.begin(), col_start.end() - 1);
    for (int i = 0; i < m; ++i) {
      for (const auto& e : model.rows[i].entries) {
        const int k = fill[e.col]++;
        row_index[k] = i;
        value[k] = e.value;
      }
    }
    cost.resize(n);
    col_lo.resize(n);
    col_hi.resize(n);
    for (int j = 0; j < n; ++j) {
      cost[j] = model.columns[j].cost;
      col_lo[j] = model.columns[j].lower;
      col_hi[j] = model.columns[j].upper;
    }
    row_lo.resize(m);
    row_hi.resize(m);
    for (int i = 0; i < m; ++i) {
      const auto& r = model.rows[i];
      row_lo[i] = r.sense == Sense::LessEqual ? -kInf : r.rhs;
      row_hi[i] = r.sense == Sense::GreaterEqual ? kInf : r.rhs;
    }
  }
};

class Run {
 public:
  Run(const LpData& p, std::span<const double> lower, std::span<const double> upper)
      : P(p), m(p.m), n(p.n), N(p.n + p.m), opt(p.opt) {
    lb.resize(N);
    ub.resize(N);
    for (int j = 0; j < n; ++j) {
      lb[j] = lower[j];
      ub[j] = upper[j];
    }
    for (int i = 0; i < m; ++i) {
      lb[n + i] = p.row_lo[i];
      ub[n + i] = p.row_hi[i];
    }
    x.assign(N, 0.0);
    status.assign(N, kAtLower);
    pos.assign(N, -1);
    head.resize(m);
    work.resize(m);
  }

  LpSolution solve(const Basis* warm, Basis* final_basis) {
    const auto start = std::chrono::steady_clock::now();
    LpSolution sol;
    for (int j = 0; j < n; ++j) {
      if (lb[j] > ub[j]) {
        sol.status = LpStatus::Infeasible;
        return sol;
      }
    }
    install_basis(warm);
    refactor();
    compute_basic_values();

    long iter = 0;
    int degenerate_run = 0;
    bool bland = false;
    bool fresh = true;
    std::vector<double> alpha(m);
    std::vector<double> cb(m);
    std::vector<double> y(m);

    for (;;) {
      if (iter >= opt.max_iterations) {
        sol.status = LpStatus::IterationLimit;
        break;
      }
      if ((iter & 63) == 0 && std::isfinite(opt.time_limit_s)) {
        const std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
        if (el.count() > opt.time_limit_s) {
          sol.status = LpStatus::IterationLimit;
          break;
        }
      }
      if (static_cast<int>(etas.size()) >= opt.refactor_interval) {
        refactor();
        compute_basic_values();
        fresh = true;
      }

      // Phase selection and basic costs.
      bool infeasible = false;
      for (int i = 0; i < m; ++i) {
        const int b = head[i];
        if (x[b] < lb[b] - opt.feas_tol) {
          cb[i] = -1.0;
          infeasible = true;
        } else if (x[b] > ub[b] + opt.feas_tol) {
          cb[i] = 1.0;
          infeasible = true;
        } else {
          cb[i] = 0.0;
        }
      }
      const bool phase1 = infeasible;
      if (!phase1) {
        for (int i = 0; i < m; ++i) cb[i] = cost_of(head[i]);
      }
      y = cb;
      btran(y);

      // Pricing.
      int q = -1;
      double best = 0.0;
      double dq = 0.0;
      for (int j = 0; j < N; ++j) {
        const signed char s = status[j];
        if (s == kBasic || lb[j] == ub[j]) continue;
        const double d = (phase1 ? 0.0 : cost_of(j)) - dot_column(j, y);
        bool eligible = false;
        if (s == kAtLower) {
          eligible = d < -opt.opt_tol;
        } else if (s == kAtUpper) {
          eligible = d > opt.opt_tol;
        } else {
          eligible = std::abs(d) > opt.opt_tol;
        }
        if (!eligible) continue;
        if (bland) {
          q = j;
          dq = d;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          q = j;
          dq = d;
        }
      }

      if (q < 0) {
        if (!fresh) {
          refactor();
          compute_basic_values();
          fresh = true;
          continue;
        }
        sol.status = phase1 ? LpStatus::Infeasible : LpStatus::Optimal;
        if (!phase1) sol.duals.assign(y.begin(), y.end());
        break;
      }

      const double dir = dq < 0.0 ? 1.0 : -1.0;
      column_dense(q, alpha);
      ftran(alpha);

      // Ratio test.
      const double ftol = opt.feas_tol;
      double theta_max = kInf;
      if (!bland) {
        for (int i = 0; i < m; ++i) {
          const double a = alpha[i];
          if (std::abs(a) <= opt.pivot_tol) continue;
          const double delta = -dir * a;
          double target = 0.0;
          if (!block_target(head[i], delta, &target)) continue;
          const double relaxed = delta < 0.0 ? (target - ftol - x[head[i]]) / delta
                                             : (target + ftol - x[head[i]]) / delta;
          theta_max = std::min(theta_max, std::max(relaxed, 0.0));
        }
      }
      int leave = -1;
      double theta = kInf;
      double leave_target = 0.0;
      double best_pivot = 0.0;
      for (int i = 0; i < m; ++i) {
        const double a = alpha[i];
        if (std::abs(a) <= opt.pivot_tol) continue;
        const double delta = -dir * a;
        double target = 0.0;
        if (!block_target(head[i], delta, &target)) continue;
        const double ratio = std::max((target - x[head[i]]) / delta, 0.0);
        if (bland) {
          if (ratio < theta - 1e-12 ||
              (ratio <= theta + 1e-12 && leave >= 0 && head[i] < head[leave])) {
            theta = ratio;
            leave = i;
            leave_target = target;
          }
        } else if (ratio <= theta_max && std::abs(a) > best_pivot) {
          best_pivot = std::abs(a);
          theta = ratio;
          leave = i;
          leave_target = target;
        }
      }
      const double flip = ub[q] - lb[q];
      const bool bound_flip = std::isfinite(flip) && (leave < 0 || flip <= theta);

      if (leave < 0 && !bound_flip) {
        if (phase1) {
          // Cannot happen in exact arithmetic; rebuild and retry once.
          if (!fresh) {
            refactor();
            compute_basic_values();
            fresh = true;
            continue;
          }
          sol.status = LpStatus::Infeasible;
        } else {
          sol.status = LpStatus::Unbounded;
        }
        break;
      }

      const double step = bound_flip ? flip : theta;
      for (int i = 0; i < m; ++i) {
        if (alpha[i] != 0.0) x[head[i]] -= dir * alpha[i] * step;
      }
      if (bound_flip) {
        if (status[q] == kAtLower) {
          x[q] = ub[q];
          status[q] = kAtUpper;
        } else {
          x[q] = lb[q];
          status[q] = kAtLower;
        }
      } else {
        x[q] += dir * step;
        const int out = head[leave];
        x[out] = leave_target;
        status[out] = (leave_target == lb[out]) ? kAtLower : kAtUpper;
        pos[out] = -1;
        head[leave] = q;
        pos[q] = leave;
        status[q] = kBasic;
        push_eta(leave, alpha);
        fresh = false;
      }

      if (step <= 1e-12) {
        if (++degenerate_run > opt.bland_after) bland = true;
      } else {
        degenerate_run = 0;
      }
      ++iter;
    }

    sol.iterations = iter;
    sol.x.assign(x.begin(), x.begin() + n);
    if (sol.status == LpStatus::Optimal) {
      double z = 0.0;
      for (int j = 0; j < n; ++j) z += P.cost[j] * x[j];
      sol.objective = z;
    }
    if (final_basis) {
      final_basis->head = head;
      final_basis->status = status;
    }
    return sol;
  }

 private:
  double cost_of(int j) const { return j < n ? P.cost[j] : 0.0; }

  double dot_column(int j, const std::vector<double>& y) const {
    if (j >= n) return -y[j - n];
    double s = 0.0;
    for (int k = P.col_start[j]; k < P.col_start[j + 1]; ++k) s += P.value[k] * y[P.row_index[k]];
    return s;
  }

  void column_dense(int j, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    if (j >= n) {
      out[j - n] = -1.0;
      return;
    }
    for (int k = P.col_start[j]; k < P.col_start[j + 1]; ++k) out[P.row_index[k]] = P.value[k];
  }

  /// Bound a basic variable runs into while changing at rate `delta`. Basic
  /// variables outside their bounds block where they regain feasibility.
  bool block_target(int b, double delta, double* target) const {
    const double tol = opt.feas_tol;
    if (delta < 0.0) {
      if (x[b] > ub[b] + tol) {
        *target = ub[b];
        return true;
      }
      if (x[b] < lb[b] - tol || lb[b] == -kInf) return false;
      *target = lb[b];
      return true;
    }
    if (x[b] < lb[b] - tol) {
      *target = lb[b];
      return true;
    }
    if (x[b] > ub[b] + tol || ub[b] == kInf) return false;
    *target = ub[b];
    return true;
  }

  void install_basis(const Basis* warm) {
    const bool usable = warm && static_cast<int>(warm->head.size()) == m &&
                        static_cast<int>(warm->status.size()) == N;
    if (usable) {
      head = warm->head;
      status = warm->status;
    } else {
      for (int i = 0; i < m; ++i) head[i] = n + i;
      for (int j = 0; j < n; ++j) status[j] = kAtLower;
      for (int i = 0; i < m; ++i) status[n + i] = kBasic;
    }
    std::fill(pos.begin(), pos.end(), -1);
    for (int i = 0; i < m; ++i) pos[head[i]] = i;
    for (int j = 0; j < N; ++j) {
      if (status[j] == kBasic) continue;
      signed char s = status[j];
      if (s == kAtUpper && ub[j] == kInf) s = kAtLower;
      if (s == kAtLower && lb[j] == -kInf) s = ub[j] < kInf ? kAtUpper : kFreeZero;
      if (s == kFreeZero && lb[j] > -kInf) s = kAtLower;
      status[j] = s;
      x[j] = s == kAtLower ? lb[j] : (s == kAtUpper ? ub[j] : 0.0);
    }
  }

  void refactor() {
    etas.clear();
    if (m == 0) return;  // SparseLU cannot factor an empty matrix
    std::vector<Eigen::Triplet<double, int>> trip;
    trip.reserve(static_cast<std::size_t>(m) * 3);
    for (int k = 0; k < m; ++k) {
      const int j = head[k];
      if (j >= n) {
        trip.emplace_back(j - n, k, -1.0);
      } else {
        for (int t = P.col_start[j]; t < P.col_start[j + 1]; ++t) {
          trip.emplace_back(P.row_index[t], k, P.value[t]);
        }
      }
    }
    SpMat B(m, m);
    B.setFromTriplets(trip.begin(), trip.end());
    B.makeCompressed();
    lu.analyzePattern(B);
    lu.factorize(B);
    if (lu.info() != Eigen::Success) {
      throw FactorizationError(-1, "basis factorisation failed: " + lu.lastErrorMessage());
    }
  }

  void compute_basic_values() {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    for (int j = 0; j < N; ++j) {
      if (status[j] == kBasic || x[j] == 0.0) continue;
      if (j >= n) {
        rhs[j - n] += x[j];
      } else {
        for (int k = P.col_start[j]; k < P.col_start[j + 1]; ++k) rhs[P.row_index[k]] -= P.value[k] * x[j];
      }
    }
    if (m == 0) return;
    Eigen::VectorXd xb = lu.solve(rhs);
    for (int i = 0; i < m; ++i) x[head[i]] = xb[i];
  }

  void ftran(std::vector<double>& v) {
    if (m == 0) return;
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m);
    work = lu.solve(vm);
    for (const Eta& e : etas) {
      const double piv = work[e.pos] / e.pivot;
      work[e.pos] = piv;
      if (piv == 0.0) continue;
      for (std::size_t k = 0; k < e.idx.size(); ++k) work[e.idx[k]] -= e.val[k] * piv;
    }
    for (int i = 0; i < m; ++i) v[i] = work[i];
  }

  void btran(std::vector<double>& v) {
    if (m == 0) return;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      double s = v[it->pos];
      for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * v[it->idx[k]];
      v[it->pos] = s / it->pivot;
    }
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m);
    work = lu.transpose().solve(vm);
    for (int i = 0; i < m; ++i) v[i] = work[i];
  }

  void push_eta(int r, const std::vector<double>& alpha) {
    Eta e;
    e.pos = r;
    e.pivot = alpha[r];
    for (int i = 0; i < m; ++i) {
      if (i != r && std::abs(alpha[i]) > 1e-14) {
        e.idx.push_back(i);
        e.val.push_back(alpha[i]);
      }
    }
    etas.push_back(std::move(e));
  }

  const LpData& P;
  const int m;
  const int n;
  const int N;
  const LpOptions& opt;
  std::vector<double> lb;
  std::vector<double> ub;
  std::vector<double> x;
  std::vector<signed char> status;
  std::vector<int> pos;
  std::vector<int> head;
  std::vector<Eta> etas;
  Eigen::VectorXd work;
  Lu lu;
};

}  // namespace

struct SimplexEngine::Impl : LpData {
  using LpData::LpData;
};

SimplexEngine::SimplexEngine(const MilpModel& model, LpOptions options)
    : impl_(std::make_unique<Impl>(model, options)) {}

SimplexEngine::~SimplexEngine() = default;
SimplexEngine::SimplexEngine(SimplexEngine&&) noexcept = default;
SimplexEngine& SimplexEngine::operator=(SimplexEngine&&) noexcept = default;

LpSolution SimplexEngine::solve(std::span<const double> lower, std::span<const double> upper,
                                const Basis* warm, Basis* final_basis) const {
  Run run(*impl_, lower, upper);
  return run.solve(warm, final_basis);
}

LpSolution SimplexEngine::solve() const { return solve(impl_->col_lo, impl_->col_hi); }

LpSolution solve_lp(const MilpModel& model, const LpOptions& options) {
  SimplexEngine engine(model, options);
  return engine.solve();
}

std::string_view to_string(LpStatus s) noexcept {
  switch (s) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
    case LpStatus::IterationLimit:
      return "iteration_limit";
  }
  return "?";
}

}  // namespace hubplan::milp
