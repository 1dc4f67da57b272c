#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace sparseae {

/// Dense row-major matrix of 64-bit floats.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> grid);
  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::size_t size() const { return data.size(); }
  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }
  std::string shape_str() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

/// Boolean observation grid, shaped like the matrix it annotates.
struct Mask {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;

  Mask() = default;
  Mask(std::size_t r, std::size_t c, bool fill = false)
      : rows(r), cols(c), data(r * c, fill ? 1 : 0) {}

  std::uint8_t& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  bool operator()(std::size_t i, std::size_t j) const { return data[i * cols + j] != 0; }

  std::size_t size() const { return data.size(); }
  std::size_t count() const;
  std::string shape_str() const;

  friend bool operator==(const Mask& a, const Mask& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

/// a * b. Accumulates along k in increasing order for every output cell, so
/// results are bit-identical to a plain triple loop.
Matrix matmul(const Matrix& a, const Matrix& b);
/// a * b^T
Matrix matmul_nt(const Matrix& a, const Matrix& b);
/// a^T * b
Matrix matmul_tn(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);

/// Adds b to every row of x; b.size() must equal x.cols.
Matrix add_bias_rows(const Matrix& x, const std::vector<double>& b);

Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);
Matrix hconcat(const Matrix& a, const Matrix& b);
/// Columns [begin, end) of a.
Matrix slice_cols(const Matrix& a, std::size_t begin, std::size_t end);

std::vector<double> colsum(const Matrix& a);
double frobenius_sq(const Matrix& a);

/// Sum over mask-true cells of (target - pred)^2; other cells contribute 0.
double masked_sq_error(const Matrix& pred, const Matrix& target, const Mask& mask);

bool all_finite(const Matrix& a);

}  // namespace sparseae
