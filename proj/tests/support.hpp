#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sparseae/matrix.hpp"
#include "sparseae/rng.hpp"

namespace testsupport {

using sparseae::Mask;
using sparseae::Matrix;

/// Plain triple-loop product, the reference for bit-for-bit checks.
inline Matrix matmul_oracle(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < b.cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

inline double masked_sq_error_oracle(const Matrix& pred, const Matrix& target, const Mask& mask) {
  double s = 0.0;
  for (std::size_t i = 0; i < pred.rows; ++i)
    for (std::size_t j = 0; j < pred.cols; ++j)
      if (mask(i, j)) s += (target(i, j) - pred(i, j)) * (target(i, j) - pred(i, j));
  return s;
}

inline double rmse_oracle(const Matrix& pred, const Matrix& truth, const Mask& mask) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < pred.rows; ++i)
    for (std::size_t j = 0; j < pred.cols; ++j)
      if (mask(i, j)) {
        s += (truth(i, j) - pred(i, j)) * (truth(i, j) - pred(i, j));
        ++n;
      }
  return std::sqrt(s / static_cast<double>(n));
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, sparseae::Rng& rng, double lo = -1.0,
                            double hi = 1.0) {
  Matrix m(rows, cols);
  for (double& v : m.data) v = rng.uniform(lo, hi);
  return m;
}

inline Mask random_mask(std::size_t rows, std::size_t cols, sparseae::Rng& rng, double density) {
  Mask m(rows, cols);
  for (auto& v : m.data) v = rng.uniform(0.0, 1.0) < density ? 1 : 0;
  return m;
}

/// Relative error with the gradient-check denominator convention.
inline double rel_err(double analytic, double numeric) {
  const double denom = std::max({std::fabs(analytic), std::fabs(numeric), 1e-8});
  return std::fabs(analytic - numeric) / denom;
}

struct GradCheckResult {
  double worst = 0.0;
  std::size_t checked = 0;
  std::string worst_at;
};

/// Central finite differences against analytic gradients, one parameter grid.
/// `params` is mutated in place and restored; `loss` re-evaluates the full
/// objective after each nudge.
inline void check_grad_span(std::vector<double>& params, const std::vector<double>& analytic,
                            const std::function<double()>& loss, double h, const std::string& name,
                            GradCheckResult& res) {
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + h;
    const double up = loss();
    params[i] = saved - h;
    const double down = loss();
    params[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double e = rel_err(analytic[i], numeric);
    if (e > res.worst) {
      res.worst = e;
      res.worst_at = name + "[" + std::to_string(i) + "]";
    }
    ++res.checked;
  }
}

/// One-sided Jacobi SVD; returns the singular values of a small matrix.
/// Works on the matrix itself (no Gram squaring), so exact-zero singular
/// values resolve to ~eps * sigma_max. Test-only rank oracle.
inline std::vector<double> singular_values(Matrix a, int sweeps = 64) {
  const std::size_t m = a.rows, n = a.cols;
  auto col_dot = [&](std::size_t p, std::size_t q) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += a(i, p) * a(i, q);
    return s;
  };
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double app = col_dot(p, p);
        const double aqq = col_dot(q, q);
        const double apq = col_dot(p, q);
        if (std::fabs(apq) <= 1e-30 + 1e-15 * std::sqrt(app * aqq)) continue;
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < m; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) sv[j] = std::sqrt(col_dot(j, j));
  return sv;
}

}  // namespace testsupport
