#include "sparseae/metrics.hpp"

#include <cmath>

#include "sparseae/errors.hpp"

namespace sparseae {

double rmse(const Matrix& pred, const MaskedMatrix& truth) {
  if (!pred.same_shape(truth.values))
    throw ShapeError("rmse: pred " + pred.shape_str() + " vs truth " + truth.values.shape_str());
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth.observed.data[i]) {
      const double d = truth.values.data[i] - pred.data[i];
      sum += d * d;
      ++n;
    }
  }
  if (n == 0) throw EvalError("rmse undefined: no observed cells in the evaluation set");
  return std::sqrt(sum / static_cast<double>(n));
}

double avg_epoch_time(double total_seconds, int epochs) {
  if (epochs < 1) throw EvalError("average epoch time undefined for zero epochs");
  return total_seconds / static_cast<double>(epochs);
}

}  // namespace sparseae
