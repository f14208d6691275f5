#include "hubplan/scengen/moments.hpp"

#include <algorithm>
#include <cmath>

namespace hubplan::scengen {

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows);
  for (std::size_t i = 0; i < rows; ++i) out[i] = (*this)(i, j);
  return out;
}

void Matrix::set_column(std::size_t j, const std::vector<double>& values) {
  for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = values[i];
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

void MomentTargets::validate() const {
  const std::size_t d = mean.size();
  if (variance.size() != d || skewness.size() != d || kurtosis.size() != d) {
    throw InvalidParameter("moment targets: mean, variance, skewness and kurtosis differ in length");
  }
  if (correlation.rows != d || correlation.cols != d) {
    throw InvalidParameter("moment targets: correlation must be " + std::to_string(d) + "x" +
                           std::to_string(d));
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!(variance[j] > 0.0)) {
      throw InvalidParameter("moment targets: variance of dimension " + std::to_string(j) +
                             " must be positive");
    }
    if (std::abs(correlation(j, j) - 1.0) > 1e-12) {
      throw InvalidParameter("moment targets: correlation diagonal " + std::to_string(j) + " is not 1");
    }
    for (std::size_t k = 0; k < d; ++k) {
      const double r = correlation(j, k);
      if (std::abs(r - correlation(k, j)) > 1e-12) {
        throw InvalidParameter("moment targets: correlation is not symmetric");
      }
      if (!(std::abs(r) <= 1.0)) {
        throw InvalidParameter("moment targets: correlation entry outside [-1, 1]");
      }
    }
  }
}

std::vector<double> raw_moments(const std::vector<double>& x, int order) {
  std::vector<double> m(order + 1, 0.0);
  for (double v : x) {
    double p = 1.0;
    for (int k = 0; k <= order; ++k) {
      m[k] += p;
      p *= v;
    }
  }
  for (double& v : m) v /= static_cast<double>(x.size());
  return m;
}

MomentTargets sample_moments(const Matrix& values) {
  const std::size_t n = values.rows;
  const std::size_t d = values.cols;
  if (n < 4) throw InvalidParameter("sample_moments needs at least 4 samples");
  MomentTargets out;
  out.mean.resize(d);
  out.variance.resize(d);
  out.skewness.resize(d);
  out.kurtosis.resize(d);
  out.correlation = Matrix::identity(d);
  const double dn = static_cast<double>(n);

  Matrix centred(n, d);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += values(i, j);
    const double mu = s / dn;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = values(i, j) - mu;
      centred(i, j) = c;
      const double c2 = c * c;
      m2 += c2;
      m3 += c2 * c;
      m4 += c2 * c2;
    }
    m2 /= dn;
    m3 /= dn;
    m4 /= dn;
    const double scale = std::max(1.0, std::abs(mu));
    if (!(m2 > 1e-24 * scale * scale)) {
      throw DegenerateDimension(j, "column " + std::to_string(j) + " is constant");
    }
    out.mean[j] = mu;
    out.variance[j] = m2;
    out.skewness[j] = m3 / std::pow(m2, 1.5);
    out.kurtosis[j] = m4 / (m2 * m2);
  }
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += centred(i, j) * centred(i, k);
      const double r = s / dn / std::sqrt(out.variance[j] * out.variance[k]);
      out.correlation(j, k) = r;
      out.correlation(k, j) = r;
    }
  }
  return out;
}

double max_moment_error(const MomentTargets& sample, const MomentTargets& target) {
  double err = 0.0;
  for (std::size_t j = 0; j < target.dims(); ++j) {
    const double sd = std::sqrt(target.variance[j]);
    err = std::max(err, std::abs(sample.mean[j] - target.mean[j]) / sd);
    err = std::max(err, std::abs(sample.variance[j] / target.variance[j] - 1.0));
    err = std::max(err, std::abs(sample.skewness[j] - target.skewness[j]));
    err = std::max(err, std::abs(sample.kurtosis[j] - target.kurtosis[j]));
  }
  return err;
}

double max_correlation_error(const Matrix& sample, const Matrix& target) {
  double err = 0.0;
  for (std::size_t i = 0; i < target.data.size(); ++i) {
    err = std::max(err, std::abs(sample.data[i] - target.data[i]));
  }
  return err;
}

namespace {

std::vector<double> number_array(const nlohmann::json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key) || !doc.at(key).is_array()) {
    throw ParseError(source, 0, 0, std::string("missing array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : doc.at(key)) {
    if (!v.is_number()) throw ParseError(source, 0, 0, std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

MomentTargets moment_targets_from_json(const nlohmann::json& doc, const std::string& source) {
  MomentTargets t;
  t.mean = number_array(doc, "mean", source);
  t.variance = number_array(doc, "variance", source);
  t.skewness = number_array(doc, "skewness", source);
  t.kurtosis = number_array(doc, "kurtosis", source);
  const std::size_t d = t.mean.size();
  t.correlation = Matrix::identity(d);
  if (doc.contains("correlation")) {
    const auto& rows = doc.at("correlation");
    if (!rows.is_array() || rows.size() != d) {
      throw ParseError(source, 0, 0, "'correlation' must have one row per dimension");
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (!rows[i].is_array() || rows[i].size() != d) {
        throw ParseError(source, 0, 0, "correlation row " + std::to_string(i) + " has the wrong length");
      }
      for (std::size_t k = 0; k < d; ++k) t.correlation(i, k) = rows[i][k].get<double>();
    }
  }
  t.validate();
  return t;
}

nlohmann::json to_json(const MomentTargets& t) {
  nlohmann::json corr = nlohmann::json::array();
  for (std::size_t i = 0; i < t.correlation.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < t.correlation.cols; ++k) row.push_back(t.correlation(i, k));
    corr.push_back(row);
  }
  return {{"mean", t.mean},
          {"variance", t.variance},
          {"skewness", t.skewness},
          {"kurtosis", t.kurtosis},
          {"correlation", corr}};
}

}  // namespace hubplan::scengen
