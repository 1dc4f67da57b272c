#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparseae/matrix.hpp"

namespace sparseae {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Per-parameter Adam moments. One state tracks one parameter grid.
struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t t = 0;
  AdamConfig cfg;

  AdamState() = default;
  AdamState(std::size_t n, const AdamConfig& c);
};

/// One Adam update with bias correction; increments state.t.
void adam_step(AdamState& s, std::span<double> param, std::span<const double> grad);
void adam_step(AdamState& s, Matrix& param, const Matrix& grad);
void adam_step(AdamState& s, std::vector<double>& param, const std::vector<double>& grad);

}  // namespace sparseae
