#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparseae/dataset.hpp"
#include "sparseae/metrics.hpp"
#include "sparseae/model_io.hpp"
#include "sparseae/training.hpp"

namespace sparseae {

enum class Algorithm { Ae, Dae, Sae, Sdae, Iae };

std::string_view algorithm_name(Algorithm a);
/// Throws ConfigError on an unknown name.
Algorithm algorithm_from_name(std::string_view name);

/// Harness-level settings: hyperparameters, split, normalization, seeds.
struct RunConfig {
  int hidden1 = 1000;
  int hidden2 = 3000;  // stacks: second layer width; iae: joint AE width
  double lambda = 0.01;
  double train_pct = 80.0;
  int epochs = 100;
  Activation enc_act = Activation::Sigmoid;
  Activation dec_act = Activation::Identity;
  CorruptionSpec corruption{CorruptionKind::Masking, 0.1};  // dae/sdae only
  AdamConfig adam{};
  NormScheme normalization = NormScheme::ZScore;
  std::uint64_t seed = 42;
  int num_seeds = 1;
  bool dense_target_loss = false;
  bool parallel = false;  // train algorithms concurrently (timing columns suffer)
  bool quiet = false;     // suppress clamp notices

  TrainConfig train_config() const;
};

/// Width after desk-scale clamping: min(configured, input dimension of the
/// layer). Emits a notice when it clamps (unless quiet).
std::size_t clamp_width(int configured, std::size_t input_dim, const std::string& what,
                        bool quiet);

/// Per-epoch hook with the current dense prediction in normalized space.
using PredictHook = std::function<void(int epoch, double loss, const Matrix& prediction)>;

struct FitResult {
  TrainedModel model;
  TrainResult train;
};

/// Builds, trains and wraps one algorithm on already-split training data.
/// `aux` is required for the iae and ignored otherwise.
FitResult fit_model(Algorithm algo, const MaskedMatrix& train_raw, const Matrix* aux,
                    const RunConfig& cfg, std::uint64_t seed, const PredictHook& hook = {});

/// fit + per-epoch test evaluation + final report. With catch_errors,
/// algorithm failures come back with ok = false instead of throwing.
EvalReport run_single(const MaskedMatrix& v_train, const MaskedMatrix& v_test, const Matrix* aux,
                      Algorithm algo, const RunConfig& cfg, std::uint64_t seed,
                      const std::string& target, TrainedModel* model_out = nullptr,
                      bool catch_errors = true);

/// Seed derivation shared by the train and benchmark commands, so a single
/// training run sees the same split and stream as the harness would.
std::uint64_t derive_split_seed(std::uint64_t run_seed, std::string_view target);
std::uint64_t derive_model_seed(std::uint64_t run_seed, Algorithm algo);

/// One benchmark target: a value grid plus its name.
struct BenchmarkTarget {
  MaskedMatrix values;
  std::string name;
};

/// Full harness: for each target and each seed, split once, then train and
/// evaluate every algorithm on the shared split.
std::vector<EvalReport> run_benchmark(const std::vector<BenchmarkTarget>& targets,
                                      const Matrix& aux, const std::vector<Algorithm>& algorithms,
                                      const RunConfig& cfg);

/// CSV emitters for the harness outputs.
std::string comparison_table_csv(const std::vector<EvalReport>& reports);
std::string trace_csv(const EvalReport& report);
/// Flat key=value dump of the full configuration for provenance.
std::string config_dump(const RunConfig& cfg, const std::vector<Algorithm>& algorithms);

}  // namespace sparseae
