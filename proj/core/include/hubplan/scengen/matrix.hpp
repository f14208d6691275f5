#pragma once

#include <cstddef>
#include <vector>

namespace hubplan::scengen {

/// Dense row-major matrix; rows are samples, columns are dimensions.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::vector<double> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<double>& values);

  static Matrix identity(std::size_t n);

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

}  // namespace hubplan::scengen
