#pragma once

#include <cstddef>
#include <vector>

#include "sparseae/activation.hpp"
#include "sparseae/matrix.hpp"
#include "sparseae/rng.hpp"
#include "sparseae/training.hpp"

namespace sparseae {

/// One encoder/decoder pair. Rows of the data are samples, so the hidden
/// layer is enc_act(x * enc_w^T + enc_b) and the output is
/// dec_act(h * dec_w^T + dec_b).
struct AeParams {
  Matrix enc_w;                // hidden x input
  std::vector<double> enc_b;   // hidden
  Matrix dec_w;                // output x hidden
  std::vector<double> dec_b;   // output
  Activation enc_act = Activation::Sigmoid;
  Activation dec_act = Activation::Identity;

  std::size_t input_dim() const { return enc_w.cols; }
  std::size_t hidden_dim() const { return enc_w.rows; }
  std::size_t output_dim() const { return dec_w.rows; }
};

/// Glorot-uniform weights (enc_w then dec_w, row-major draw order),
/// zero biases. Output dimension equals input dimension.
AeParams make_autoencoder(std::size_t input, std::size_t hidden, Rng& rng,
                          Activation enc = Activation::Sigmoid,
                          Activation dec = Activation::Identity);

struct AeForward {
  Matrix z_hidden;  // pre-activation of the hidden layer
  Matrix hidden;
  Matrix z_out;
  Matrix out;
};

AeForward ae_forward(const AeParams& p, const Matrix& x);

/// Masked reconstruction error of x against its own reconstruction.
double ae_loss(const AeParams& p, const Matrix& x, const Mask& mask);

struct AeGradients {
  Matrix enc_w;
  std::vector<double> enc_b;
  Matrix dec_w;
  std::vector<double> dec_b;
};

struct AeBackward {
  AeGradients grads;
  double loss = 0.0;
};

/// Analytic gradients of the masked reconstruction loss, input == target.
AeBackward ae_backward(const AeParams& p, const Matrix& x, const Mask& mask);

/// Denoising variant: forward on `input` (possibly corrupted), loss against
/// `target` on the mask.
AeBackward denoising_backward(const AeParams& p, const Matrix& input, const Matrix& target,
                              const Mask& mask);

/// Full-batch Adam loop. When spec.kind != None the input is re-corrupted
/// every epoch from rng; the loss is always taken against the clean x.
/// Rejects an all-unobserved mask with ConfigError.
TrainResult train_dae(AeParams& p, const Matrix& x, const Mask& mask, const CorruptionSpec& spec,
                      const TrainConfig& cfg, Rng* rng, const EpochFn& on_epoch = {});

/// train_dae with no corruption.
TrainResult train_ae(AeParams& p, const Matrix& x, const Mask& mask, const TrainConfig& cfg,
                     const EpochFn& on_epoch = {});

}  // namespace sparseae
