#pragma once

#include <cstdint>
#include <string>

#include "sparseae/dataset.hpp"

namespace sparseae {

struct SynthSpec {
  std::size_t rows = 200;
  std::size_t cols = 50;
  std::size_t rank = 5;
  double density = 0.2;        // fraction of cells observed, (0, 1]
  double noise_sd = 0.1;       // gaussian noise on observed cells
  double aux_informativeness = 1.0;  // 1 = pure row similarity, 0 = pure noise
  std::uint64_t seed = 42;
};

struct SynthData {
  MaskedMatrix observed;
  Matrix aux;
  Matrix ground_truth;    // noise-free low-rank grid
  Matrix row_similarity;  // the rescaled similarity the aux blends toward
};

/// Low-rank ground truth L * R^T with seeded gaussian factors; exactly
/// floor(density * rows * cols) cells observed (seeded shuffle), each with
/// additive gaussian noise. The auxiliary matrix blends the min-max rescaled
/// row similarity L * L^T with seeded uniform noise.
SynthData synth_generate(const SynthSpec& spec);

void validate_synth_spec(const SynthSpec& spec);

std::string manifest_string(const SynthSpec& spec);
void save_manifest(const std::string& path, const SynthSpec& spec);
SynthSpec load_manifest(const std::string& path);

}  // namespace sparseae
