#include "sparseae/dataset.hpp"

#include <cmath>
#include <numeric>

#include "sparseae/errors.hpp"
#include "sparseae/rng.hpp"

namespace sparseae {

MaskedMatrix make_masked(Matrix values, Mask observed) {
  if (values.rows != observed.rows || values.cols != observed.cols)
    throw ShapeError("make_masked: values " + values.shape_str() + " vs mask " +
                     observed.shape_str());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!observed.data[i]) values.data[i] = 0.0;
  return MaskedMatrix{std::move(values), std::move(observed)};
}

std::pair<MaskedMatrix, MaskedMatrix> split(const MaskedMatrix& mm, const SplitSpec& spec) {
  if (spec.train_pct <= 0.0 || spec.train_pct >= 100.0)
    throw ConfigError("train percentage must lie strictly between 0 and 100, got " +
                      std::to_string(spec.train_pct));
  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < mm.observed.size(); ++i)
    if (mm.observed.data[i]) cells.push_back(i);
  if (cells.size() < 2)
    throw ConfigError("split needs at least 2 observed cells, got " +
                      std::to_string(cells.size()));

  Rng rng(spec.seed);
  rng.shuffle(cells.begin(), cells.end());
  const auto n_train = static_cast<std::size_t>(std::floor(
      static_cast<long double>(cells.size()) * static_cast<long double>(spec.train_pct) / 100.0L));

  Mask train_mask(mm.observed.rows, mm.observed.cols);
  Mask test_mask(mm.observed.rows, mm.observed.cols);
  for (std::size_t k = 0; k < cells.size(); ++k)
    (k < n_train ? train_mask : test_mask).data[cells[k]] = 1;

  return {make_masked(mm.values, std::move(train_mask)),
          make_masked(mm.values, std::move(test_mask))};
}

std::string_view norm_scheme_name(NormScheme s) {
  switch (s) {
    case NormScheme::None: return "none";
    case NormScheme::MinMax: return "minmax";
    case NormScheme::ZScore: return "zscore";
  }
  return "none";
}

NormScheme norm_scheme_from_name(std::string_view name) {
  if (name == "none") return NormScheme::None;
  if (name == "minmax") return NormScheme::MinMax;
  if (name == "zscore") return NormScheme::ZScore;
  throw ConfigError("unknown normalization scheme '" + std::string(name) +
                    "' (expected none|minmax|zscore)");
}

double Normalizer::apply_value(double x) const {
  switch (scheme) {
    case NormScheme::None: return x;
    case NormScheme::MinMax: return (x - p1) / (p2 - p1);
    case NormScheme::ZScore: return (x - p1) / p2;
  }
  return x;
}

double Normalizer::invert_value(double y) const {
  switch (scheme) {
    case NormScheme::None: return y;
    case NormScheme::MinMax: return y * (p2 - p1) + p1;
    case NormScheme::ZScore: return y * p2 + p1;
  }
  return y;
}

MaskedMatrix Normalizer::apply(const MaskedMatrix& mm) const {
  MaskedMatrix out = mm;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    if (out.observed.data[i]) out.values.data[i] = apply_value(out.values.data[i]);
  return out;
}

Matrix Normalizer::invert(const Matrix& pred) const {
  Matrix out = pred;
  for (double& v : out.data) v = invert_value(v);
  return out;
}

Normalizer fit_normalizer(const MaskedMatrix& train, NormScheme scheme) {
  Normalizer n;
  n.scheme = scheme;
  if (scheme == NormScheme::None) return n;

  std::vector<double> obs;
  for (std::size_t i = 0; i < train.values.size(); ++i)
    if (train.observed.data[i]) obs.push_back(train.values.data[i]);
  if (obs.empty()) throw ConfigError("cannot fit a normalizer on zero observed cells");

  if (scheme == NormScheme::MinMax) {
    double lo = obs[0], hi = obs[0];
    for (double v : obs) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi == lo) throw ConfigError("minmax normalization undefined: constant training data");
    n.p1 = lo;
    n.p2 = hi;
  } else {
    const double mean = std::accumulate(obs.begin(), obs.end(), 0.0) / obs.size();
    double var = 0.0;
    for (double v : obs) var += (v - mean) * (v - mean);
    var /= obs.size();
    const double sd = std::sqrt(var);
    if (sd == 0.0) throw ConfigError("zscore normalization undefined: zero-variance training data");
    n.p1 = mean;
    n.p2 = sd;
  }
  return n;
}

}  // namespace sparseae
