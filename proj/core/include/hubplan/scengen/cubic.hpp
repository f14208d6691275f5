#pragma once

#include <array>
#include <string>
#include <vector>

#include "hubplan/core/error.hpp"

namespace hubplan::scengen {

/// Coefficients of y = a + b x + c x^2 + d x^3.
struct Cubic {
  double a = 0.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  double operator()(double x) const noexcept { return a + x * (b + x * (c + x * d)); }
};

struct FourMoments {
  double mean = 0.0;
  double variance = 1.0;
  double skewness = 0.0;
  double kurtosis = 3.0;
};

struct CubicFitOptions {
  int max_iters = 100;
  /// Convergence threshold on the scaled residual of the raw-moment equations.
  double tol = 1e-10;
};

class FitFailure : public Error {
 public:
  FitFailure(double residual, const std::string& what) : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Finds a cubic mapping a variable with raw moments `seed` (E[x^0..x^12]) to
/// one with the target moments, by damped Newton on the four raw-moment
/// equations. Throws FitFailure when kurtosis < skewness^2 + 1 or when the
/// iteration does not converge.
Cubic fit_cubic_transform(const FourMoments& target, const std::vector<double>& seed,
                          const CubicFitOptions& options = {});

/// Raw moments E[y^1..y^4] of the cubic image given seed raw moments.
std::array<double, 4> transformed_raw_moments(const Cubic& f, const std::vector<double>& seed);

}  // namespace hubplan::scengen
