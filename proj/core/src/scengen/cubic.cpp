#include "hubplan/scengen/cubic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

namespace hubplan::scengen {

namespace {

using Poly = std::vector<double>;

Poly multiply(const Poly& p, const Poly& q) {
  Poly out(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

double expect(const Poly& p, const std::vector<double>& m, std::size_t shift = 0) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * m[i + shift];
  return s;
}

std::array<double, 4> target_raw(const FourMoments& t) {
  const double mu = t.mean;
  const double s2 = t.variance;
  const double s = std::sqrt(s2);
  const double s3 = s2 * s;
  return {mu, s2 + mu * mu, t.skewness * s3 + 3.0 * mu * s2 + mu * mu * mu,
          t.kurtosis * s2 * s2 + 4.0 * mu * t.skewness * s3 + 6.0 * mu * mu * s2 + mu * mu * mu * mu};
}

struct System {
  Eigen::Vector4d f;
  Eigen::Matrix4d jac;
};

// Residuals E[y^k] - target_k with the analytic Jacobian
// d E[y^k] / d p_j = k E[y^(k-1) x^j].
System evaluate(const Cubic& c, const std::vector<double>& m, const std::array<double, 4>& target) {
  const Poly y{c.a, c.b, c.c, c.d};
  std::array<Poly, 5> pw;
  pw[0] = Poly{1.0};
  for (int k = 1; k <= 4; ++k) pw[k] = multiply(pw[k - 1], y);
  System s;
  for (int k = 1; k <= 4; ++k) {
    s.f[k - 1] = expect(pw[k], m) - target[k - 1];
    for (int j = 0; j < 4; ++j) {
      s.jac(k - 1, j) = k * expect(pw[k - 1], m, static_cast<std::size_t>(j));
    }
  }
  return s;
}

}  // namespace

std::array<double, 4> transformed_raw_moments(const Cubic& f, const std::vector<double>& seed) {
  if (seed.size() < 13) throw InvalidParameter("cubic transform needs raw moments up to order 12");
  const Poly y{f.a, f.b, f.c, f.d};
  Poly p{1.0};
  std::array<double, 4> out{};
  for (int k = 0; k < 4; ++k) {
    p = multiply(p, y);
    out[k] = expect(p, seed);
  }
  return out;
}

Cubic fit_cubic_transform(const FourMoments& target, const std::vector<double>& seed,
                          const CubicFitOptions& options) {
  if (!(target.variance > 0.0)) throw InvalidParameter("cubic fit: target variance must be positive");
  if (seed.size() < 13) throw InvalidParameter("cubic fit: seed needs raw moments up to order 12");
  for (double v : seed) {
    if (!std::isfinite(v)) throw InvalidParameter("cubic fit: seed moments must be finite");
  }
  if (target.kurtosis < target.skewness * target.skewness + 1.0) {
    throw FitFailure(std::numeric_limits<double>::infinity(),
                     "cubic fit: kurtosis " + std::to_string(target.kurtosis) +
                         " is below skewness^2 + 1");
  }
  const double seed_var = seed[2] - seed[1] * seed[1];
  if (!(seed_var > 0.0)) throw FitFailure(std::numeric_limits<double>::infinity(), "cubic fit: seed is constant");

  // Fit to the standardized target and rescale afterwards so the residuals
  // stay well scaled when the mean is large relative to the spread.
  const FourMoments standard{0.0, 1.0, target.skewness, target.kurtosis};
  const auto raw = target_raw(standard);
  const double sigma = std::sqrt(target.variance);

  // Affine start: matches mean and variance exactly.
  Cubic c;
  c.b = 1.0 / std::sqrt(seed_var);
  c.a = -c.b * seed[1];

  System sys = evaluate(c, seed, raw);
  double norm = sys.f.lpNorm<Eigen::Infinity>();
  for (int it = 0; it < options.max_iters && norm > options.tol; ++it) {
    const Eigen::Vector4d step = sys.jac.fullPivLu().solve(-sys.f);
    if (!step.allFinite()) break;
    double lambda = 1.0;
    bool improved = false;
    for (int h = 0; h < 30; ++h) {
      Cubic trial{c.a + lambda * step[0], c.b + lambda * step[1], c.c + lambda * step[2],
                  c.d + lambda * step[3]};
      System next = evaluate(trial, seed, raw);
      const double n2 = next.f.lpNorm<Eigen::Infinity>();
      if (std::isfinite(n2) && n2 < norm) {
        c = trial;
        sys = next;
        norm = n2;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved) break;
  }
  if (!(norm <= options.tol)) {
    throw FitFailure(norm, "cubic fit did not converge (residual " + std::to_string(norm) + ")");
  }
  c.a = target.mean + sigma * c.a;
  c.b *= sigma;
  c.c *= sigma;
  c.d *= sigma;
  return c;
}

}  // namespace hubplan::scengen
