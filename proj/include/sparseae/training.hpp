#pragma once

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "sparseae/adam.hpp"
#include "sparseae/matrix.hpp"
#include "sparseae/rng.hpp"

namespace sparseae {

enum class CorruptionKind { None, Masking, GaussianAdditive };

/// Stochastic input degradation for denoising training.
/// Masking: each entry independently zeroed with probability `level`.
/// GaussianAdditive: i.i.d. noise of standard deviation `level` added.
struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::None;
  double level = 0.0;
};

/// Validates the spec and applies it to x. `None` returns x unchanged and
/// draws nothing from rng.
Matrix corrupt(const Matrix& x, const CorruptionSpec& spec, Rng& rng);

void validate_corruption(const CorruptionSpec& spec);

std::string_view corruption_kind_name(CorruptionKind k);
/// Throws ConfigError on an unknown name.
CorruptionKind corruption_kind_from_name(std::string_view name);

struct TrainConfig {
  int epochs = 100;
  AdamConfig adam{};
  /// Corruption used by denoising variants; recorded in model files.
  CorruptionSpec corruption{};
  /// Seed the run was driven by; provenance only, training ops take an Rng.
  std::uint64_t seed = 0;
  /// Literal fully-dense reading of the joined reconstruction loss:
  /// include unobserved target cells instead of masking them out.
  bool dense_target_loss = false;
};

/// Called after each epoch's update with the pre-update loss. Runs outside
/// the timed section.
using EpochFn = std::function<void(int epoch, double loss)>;

/// One optimization phase (one Adam-driven loop over epochs on one objective).
struct PhaseResult {
  std::vector<double> loss_trace;
  double seconds = 0.0;
};

struct TrainResult {
  std::vector<double> loss_trace;  // trace of the final phase
  int phases = 1;
  double seconds = 0.0;  // summed over all phases, observers excluded
};

}  // namespace sparseae
