#include "hubplan/scengen/correlation.hpp"

#include <cmath>
#include <string>

namespace hubplan::scengen {

Matrix cholesky(const Matrix& r, double tol) {
  if (r.rows != r.cols) throw InvalidParameter("cholesky: matrix is not square");
  const std::size_t n = r.rows;
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = r(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (diag < -tol) {
      throw DecompositionError(j + 1, "matrix is not positive semidefinite: leading minor " +
                                          std::to_string(j + 1) + " is negative");
    }
    if (diag <= tol) {
      // Semidefinite direction: the rest of this column must vanish.
      for (std::size_t i = j + 1; i < n; ++i) {
        double s = r(i, j);
        for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
        if (std::abs(s) > std::sqrt(tol)) {
          throw DecompositionError(j + 1, "matrix is not positive semidefinite: leading minor " +
                                              std::to_string(j + 1) + " is singular");
        }
      }
      continue;
    }
    const double root = std::sqrt(diag);
    l(j, j) = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = r(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / root;
    }
  }
  return l;
}

Matrix impose_correlation(const Matrix& values, const Matrix& r) {
  if (r.rows != values.cols || r.cols != values.cols) {
    throw InvalidParameter("impose_correlation: correlation size does not match the sample");
  }
  const Matrix l = cholesky(r);
  const std::size_t d = values.cols;
  Matrix out(values.rows, d);
  for (std::size_t i = 0; i < values.rows; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= j; ++k) s += values(i, k) * l(j, k);
      out(i, j) = s;
    }
  }
  return out;
}

Matrix shrink_to_psd(const Matrix& r, double* lambda) {
  auto blend = [&](double w) {
    Matrix m = r;
    for (std::size_t i = 0; i < r.rows; ++i) {
      for (std::size_t j = 0; j < r.cols; ++j) m(i, j) = (1.0 - w) * r(i, j) + (i == j ? w : 0.0);
    }
    return m;
  };
  auto ok = [](const Matrix& m) {
    try {
      cholesky(m);
      return true;
    } catch (const DecompositionError&) {
      return false;
    }
  };
  if (ok(r)) {
    if (lambda) *lambda = 0.0;
    return r;
  }
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ok(blend(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (lambda) *lambda = hi;
  return blend(hi);
}

}  // namespace hubplan::scengen
