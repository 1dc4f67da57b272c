#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparseae/dataset.hpp"
#include "sparseae/matrix.hpp"

namespace sparseae {

/// Root mean squared error over the observed cells of `truth`.
double rmse(const Matrix& pred, const MaskedMatrix& truth);

/// Average wall-clock seconds per epoch.
double avg_epoch_time(double total_seconds, int epochs);

/// One benchmark run: an algorithm trained on one target.
struct EvalReport {
  std::string algorithm;
  std::string target;
  double final_rmse = 0.0;
  std::vector<double> rmse_trace;   // per-epoch test RMSE, final phase
  std::vector<double> loss_trace;   // per-epoch train loss, final phase
  double total_time_s = 0.0;        // training compute, all phases
  double avg_epoch_time_s = 0.0;
  std::uint64_t seed = 0;
  int phases = 0;
  bool ok = false;
  std::string error;
};

}  // namespace sparseae
