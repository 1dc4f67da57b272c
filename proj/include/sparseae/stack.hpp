#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sparseae/autoencoder.hpp"

namespace sparseae {

/// Layerwise-trained pile of autoencoders; layer i+1 consumes layer i's
/// hidden representation.
struct StackModel {
  std::vector<AeParams> layers;
};

/// Builds k autoencoders whose dimensions chain: layer 0 encodes `input`
/// into hidden_sizes[0], layer 1 encodes hidden_sizes[0] into
/// hidden_sizes[1], and so on.
StackModel make_stack(std::size_t input, std::span<const std::size_t> hidden_sizes, Rng& rng,
                      Activation enc = Activation::Sigmoid,
                      Activation dec = Activation::Identity);

/// Layerwise pre-training: layer 0 on x under `mask`, each subsequent layer
/// on the previous encoder output (dense, full mask). The corruption spec is
/// applied at every layer's input when not None. Returns one PhaseResult per
/// layer.
std::vector<PhaseResult> stack_pretrain(StackModel& stack, const Matrix& x, const Mask& mask,
                                        const CorruptionSpec& spec, const TrainConfig& cfg,
                                        Rng* rng);

/// One dense layer of the unrolled network.
struct DenseLayer {
  Matrix w;  // out x in
  std::vector<double> b;
  Activation act = Activation::Identity;
};

using LayerStack = std::vector<DenseLayer>;

/// Unrolls k encoders followed by k decoders (mirror order) into a 2k-layer
/// network initialized from the pre-trained weights.
LayerStack unroll(const StackModel& stack);

Matrix forward_stack(const LayerStack& net, const Matrix& x);

struct LayerGrad {
  Matrix w;
  std::vector<double> b;
};

struct StackBackward {
  std::vector<LayerGrad> grads;
  double loss = 0.0;
};

/// Gradients of the end-to-end masked reconstruction loss of x.
StackBackward stack_backward(const LayerStack& net, const Matrix& x, const Mask& mask);

/// End-to-end fine-tuning of the unrolled network with Adam.
TrainResult stack_finetune(LayerStack& net, const Matrix& x, const Mask& mask,
                           const TrainConfig& cfg, const EpochFn& on_epoch = {});

}  // namespace sparseae
