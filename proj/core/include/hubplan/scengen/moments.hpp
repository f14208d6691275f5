#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hubplan/core/error.hpp"
#include "hubplan/scengen/matrix.hpp"

namespace hubplan::scengen {

/// Per-dimension marginal moments and the correlation matrix. Kurtosis is the
/// standardized fourth moment (3 for a normal), not the excess.
struct MomentTargets {
  std::vector<double> mean;
  std::vector<double> variance;
  std::vector<double> skewness;
  std::vector<double> kurtosis;
  Matrix correlation;

  std::size_t dims() const noexcept { return mean.size(); }

  /// Throws InvalidParameter on size mismatch, non-positive variance, or a
  /// correlation matrix that is not symmetric with unit diagonal and entries
  /// in [-1, 1]. Positive semidefiniteness is left to the Cholesky step.
  void validate() const;
};

/// A dimension with zero variance where moments are undefined.
class DegenerateDimension : public Error {
 public:
  DegenerateDimension(std::size_t dim, const std::string& what) : Error(what), dim_(dim) {}
  std::size_t dim() const noexcept { return dim_; }

 private:
  std::size_t dim_;
};

/// Mean, population variance (divisor N), skewness, kurtosis and Pearson
/// correlation of every column. Requires N >= 4 and no constant column.
MomentTargets sample_moments(const Matrix& values);

/// Raw moments E[x^k] for k = 0..order of one sample.
std::vector<double> raw_moments(const std::vector<double>& x, int order);

/// Largest absolute difference between the moments of `sample` and `target`,
/// measured in standardized units: mean error over sigma, relative variance
/// error, then skewness and kurtosis differences.
double max_moment_error(const MomentTargets& sample, const MomentTargets& target);
double max_correlation_error(const Matrix& sample, const Matrix& target);

MomentTargets moment_targets_from_json(const nlohmann::json& doc, const std::string& source = "<json>");
nlohmann::json to_json(const MomentTargets& targets);

}  // namespace hubplan::scengen
