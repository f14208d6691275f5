#include "hubplan/scengen/hmm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>

#include "hubplan/scengen/correlation.hpp"
#include "hubplan/scengen/cubic.hpp"

namespace hubplan::scengen {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1) from the top 53 bits.
double unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<Mat> view(Matrix& m) {
  return {m.data.data(), static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols)};
}

// Cubic step: transforms each column to the standardized targets using the
// column's own raw moments as the seed moments.
void match_marginals(Matrix& x, const MomentTargets& t, bool first) {
  for (std::size_t j = 0; j < x.cols; ++j) {
    std::vector<double> col = x.column(j);
    const auto seed = raw_moments(col, 12);
    const FourMoments target{0.0, 1.0, t.skewness[j], t.kurtosis[j]};
    Cubic f;
    try {
      f = fit_cubic_transform(target, seed);
    } catch (const FitFailure& e) {
      // Infeasible targets are reported; a Newton stall on a small sample
      // falls back to matching mean and variance only.
      if (first && !std::isfinite(e.residual())) {
        throw FitFailure(e.residual(), "dimension " + std::to_string(j) + ": " + e.what());
      }
      const double sd = std::sqrt(seed[2] - seed[1] * seed[1]);
      f = Cubic{-seed[1] / sd, 1.0 / sd, 0.0, 0.0};
    }
    for (double& v : col) v = f(v);
    x.set_column(j, col);
  }
}

// X <- X L_cur^{-T} L^T, where L_cur factors the current sample correlation.
void match_correlation(Matrix& x, const Matrix& target_l) {
  const std::size_t d = x.cols;
  MomentTargets cur = sample_moments(x);
  Eigen::MatrixXd rc(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) rc(i, k) = cur.correlation(i, k);
  }
  // With fewer samples than dimensions the sample correlation is singular;
  // a small ridge keeps the factor invertible.
  double ridge = 0.0;
  Eigen::LLT<Eigen::MatrixXd> llt;
  for (;;) {
    llt.compute(rc + ridge * Eigen::MatrixXd::Identity(d, d));
    const Eigen::MatrixXd lm = llt.matrixL();
    if (llt.info() == Eigen::Success && lm.diagonal().minCoeff() > 1e-6) break;
    ridge = ridge == 0.0 ? 1e-8 : ridge * 10.0;
  }
  Eigen::MatrixXd lt(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) lt(i, k) = target_l(k, i);
  }
  auto xv = view(x);
  Mat white = llt.matrixL().solve(xv.transpose()).transpose();
  xv = white * lt;
}

}  // namespace

double seed_normal(std::uint64_t seed, std::uint64_t dim, std::uint64_t counter) noexcept {
  const std::uint64_t key = splitmix64(splitmix64(seed) ^ (dim * 0xd1b54a32d192ed03ULL));
  const double u1 = unit_open(splitmix64(key ^ (2 * counter)));
  const double u2 = unit_open(splitmix64(key ^ (2 * counter + 1)));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Matrix seed_sample(std::size_t n, std::size_t dims, std::uint64_t seed) {
  Matrix m(n, dims);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dims; ++j) m(i, j) = seed_normal(seed, j, i);
  }
  return m;
}

RawSampleMatrix hmm_generate(const MomentTargets& targets, std::size_t n, std::uint64_t seed,
                             const HmmOptions& options) {
  targets.validate();
  const std::size_t d = targets.dims();
  if (n < 4) throw InvalidParameter("hmm_generate needs at least 4 scenarios");
  const Matrix target_l = cholesky(targets.correlation);

  MomentTargets standard = targets;
  for (std::size_t j = 0; j < d; ++j) {
    standard.mean[j] = 0.0;
    standard.variance[j] = 1.0;
  }

  RawSampleMatrix out;
  out.seed = seed;
  Matrix x = seed_sample(n, d, seed);
  match_marginals(x, standard, true);

  Matrix best = x;
  double best_err = std::numeric_limits<double>::infinity();
  for (int it = 0;; ++it) {
    if (it > 0) {
      match_correlation(x, target_l);
      match_marginals(x, standard, false);
    }
    const MomentTargets got = sample_moments(x);
    IterationRecord rec{it, max_moment_error(got, standard),
                        max_correlation_error(got.correlation, targets.correlation)};
    out.iteration_log.push_back(rec);
    const double err = std::max(rec.moment_error, rec.correlation_error);
    if (err < best_err) {
      best_err = err;
      best = x;
      out.best_iteration = it;
    }
    if (rec.moment_error <= options.tol && rec.correlation_error <= options.tol) {
      out.converged = true;
      break;
    }
    if (it >= options.max_iters) break;
  }

  out.values = Matrix(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(targets.variance[j]);
    for (std::size_t i = 0; i < n; ++i) out.values(i, j) = targets.mean[j] + sd * best(i, j);
  }
  return out;
}

nlohmann::json convergence_log_json(const RawSampleMatrix& sample) {
  nlohmann::json iters = nlohmann::json::array();
  for (const auto& r : sample.iteration_log) {
    iters.push_back({{"iteration", r.iteration},
                     {"moment_error", r.moment_error},
                     {"correlation_error", r.correlation_error}});
  }
  return {{"seed", sample.seed},
          {"scenarios", sample.values.rows},
          {"dims", sample.values.cols},
          {"converged", sample.converged},
          {"best_iteration", sample.best_iteration},
          {"iterations", iters}};
}

}  // namespace hubplan::scengen
