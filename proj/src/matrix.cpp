#include "sparseae/matrix.hpp"

#include <cmath>

#include "sparseae/errors.hpp"

namespace sparseae {

namespace {

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

std::string Matrix::shape_str() const { return dims(rows, cols); }
std::string Mask::shape_str() const { return dims(rows, cols); }

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> grid) {
  Matrix m(grid.size(), grid.size() ? grid.begin()->size() : 0);
  std::size_t i = 0;
  for (const auto& row : grid) {
    if (row.size() != m.cols)
      throw ShapeError("from_rows: ragged row " + std::to_string(i));
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::size_t Mask::count() const {
  std::size_t n = 0;
  for (auto v : data) n += v != 0;
  return n;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows)
    throw ShapeError("matmul: " + a.shape_str() + " incompatible with " + b.shape_str());
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = &a.data[i * a.cols];
    double* crow = &c.data[i * c.cols];
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = arow[k];
      const double* brow = &b.data[k * b.cols];
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols != b.cols)
    throw ShapeError("matmul_nt: " + a.shape_str() + " incompatible with " + b.shape_str() + "^T");
  Matrix c(a.rows, b.rows);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* arow = &a.data[i * a.cols];
    for (std::size_t j = 0; j < b.rows; ++j) {
      const double* brow = &b.data[j * b.cols];
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += arow[k] * brow[k];
      c(i, j) = acc;
    }
  }
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows)
    throw ShapeError("matmul_tn: " + a.shape_str() + "^T incompatible with " + b.shape_str());
  Matrix c(a.cols, b.cols);
  for (std::size_t k = 0; k < a.rows; ++k) {
    const double* arow = &a.data[k * a.cols];
    const double* brow = &b.data[k * b.cols];
    for (std::size_t i = 0; i < a.cols; ++i) {
      const double aki = arow[i];
      double* crow = &c.data[i * c.cols];
      for (std::size_t j = 0; j < b.cols; ++j) crow[j] += aki * brow[j];
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Matrix add_bias_rows(const Matrix& x, const std::vector<double>& b) {
  if (b.size() != x.cols)
    throw ShapeError("add_bias_rows: bias length " + std::to_string(b.size()) +
                     " does not match " + x.shape_str());
  Matrix out = x;
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) out(i, j) += b[j];
  return out;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw ShapeError("hadamard: " + a.shape_str() + " vs " + b.shape_str());
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] *= b.data[i];
  return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b))
    throw ShapeError("subtract: " + a.shape_str() + " vs " + b.shape_str());
  Matrix out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

Matrix hconcat(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows)
    throw ShapeError("hconcat: " + a.shape_str() + " vs " + b.shape_str());
  Matrix out(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) out(i, a.cols + j) = b(i, j);
  }
  return out;
}

Matrix slice_cols(const Matrix& a, std::size_t begin, std::size_t end) {
  if (begin > end || end > a.cols)
    throw ShapeError("slice_cols: [" + std::to_string(begin) + ", " + std::to_string(end) +
                     ") out of range for " + a.shape_str());
  Matrix out(a.rows, end - begin);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = begin; j < end; ++j) out(i, j - begin) = a(i, j);
  return out;
}

std::vector<double> colsum(const Matrix& a) {
  std::vector<double> s(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) s[j] += a(i, j);
  return s;
}

double frobenius_sq(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return s;
}

double masked_sq_error(const Matrix& pred, const Matrix& target, const Mask& mask) {
  if (!pred.same_shape(target))
    throw ShapeError("masked_sq_error: pred " + pred.shape_str() + " vs target " +
                     target.shape_str());
  if (mask.rows != pred.rows || mask.cols != pred.cols)
    throw ShapeError("masked_sq_error: mask " + mask.shape_str() + " vs " + pred.shape_str());
  double s = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (mask.data[i]) {
      const double d = target.data[i] - pred.data[i];
      s += d * d;
    }
  }
  return s;
}

bool all_finite(const Matrix& a) {
  for (double v : a.data)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace sparseae
