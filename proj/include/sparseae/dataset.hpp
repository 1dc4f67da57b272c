#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparseae/matrix.hpp"

namespace sparseae {

/// Sparse value grid: dense storage plus an observation mask. Unobserved
/// cells hold exactly 0.
struct MaskedMatrix {
  Matrix values;
  Mask observed;
};

/// Validates shapes and zeroes unobserved cells.
MaskedMatrix make_masked(Matrix values, Mask observed);

struct SplitSpec {
  double train_pct = 80.0;  // percentage of observed cells assigned to train
  std::uint64_t seed = 0;
};

/// Seeded shuffle of the observed-cell list; exactly
/// floor(train_pct% * N) cells go to train, the rest to test. The two masks
/// are disjoint and their union is the input mask.
std::pair<MaskedMatrix, MaskedMatrix> split(const MaskedMatrix& mm, const SplitSpec& spec);

enum class NormScheme { None, MinMax, ZScore };

std::string_view norm_scheme_name(NormScheme s);
NormScheme norm_scheme_from_name(std::string_view name);

/// Invertible per-value transform fitted on training observations only.
struct Normalizer {
  NormScheme scheme = NormScheme::None;
  double p1 = 0.0;  // minmax: min;  zscore: mean
  double p2 = 1.0;  // minmax: max;  zscore: sd

  double apply_value(double x) const;
  double invert_value(double y) const;
  /// Transforms observed cells; unobserved cells stay exactly 0.
  MaskedMatrix apply(const MaskedMatrix& mm) const;
  /// Inverts a dense prediction back to original units.
  Matrix invert(const Matrix& pred) const;
};

/// Fits on the observed cells of `train` only. Throws ConfigError when the
/// scheme is degenerate on that data (zero range / zero variance).
Normalizer fit_normalizer(const MaskedMatrix& train, NormScheme scheme);

/// Train/test split plus side information, ready for the harness.
struct Dataset {
  MaskedMatrix train;
  MaskedMatrix test;
  Matrix aux;
  std::optional<Matrix> ground_truth;
  std::vector<std::string> col_names;
};

}  // namespace sparseae
