#pragma once

#include <string>

#include "hubplan/core/error.hpp"
#include "hubplan/scengen/matrix.hpp"

namespace hubplan::scengen {

/// Cholesky factorisation failed; `minor` is the 1-based order of the leading
/// principal minor that is negative.
class DecompositionError : public Error {
 public:
  DecompositionError(std::size_t minor, const std::string& what) : Error(what), minor_(minor) {}
  std::size_t minor() const noexcept { return minor_; }

 private:
  std::size_t minor_;
};

/// Lower-triangular L with L L^T = R for a symmetric positive semidefinite R.
/// Pivots within `tol` of zero give a zero column instead of failing.
Matrix cholesky(const Matrix& r, double tol = 1e-10);

/// values * L^T, giving columns correlated as R when the input columns are
/// standardized and uncorrelated.
Matrix impose_correlation(const Matrix& values, const Matrix& r);

/// Smallest lambda on a bisection grid such that (1 - lambda) R + lambda I is
/// positive semidefinite, and that matrix.
Matrix shrink_to_psd(const Matrix& r, double* lambda = nullptr);

}  // namespace hubplan::scengen
