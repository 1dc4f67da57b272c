#include "sparseae/autoencoder.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "sparseae/errors.hpp"

namespace sparseae {

namespace {

Matrix glorot(std::size_t rows, std::size_t cols, std::size_t fan_in, std::size_t fan_out,
              Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  Matrix w(rows, cols);
  for (double& v : w.data) v = rng.uniform(-limit, limit);
  return w;
}

}  // namespace

AeParams make_autoencoder(std::size_t input, std::size_t hidden, Rng& rng, Activation enc,
                          Activation dec) {
  if (input == 0 || hidden == 0)
    throw ConfigError("autoencoder dimensions must be positive");
  AeParams p;
  p.enc_w = glorot(hidden, input, input, hidden, rng);
  p.enc_b.assign(hidden, 0.0);
  p.dec_w = glorot(input, hidden, hidden, input, rng);
  p.dec_b.assign(input, 0.0);
  p.enc_act = enc;
  p.dec_act = dec;
  return p;
}

AeForward ae_forward(const AeParams& p, const Matrix& x) {
  if (x.cols != p.input_dim())
    throw ShapeError("ae_forward: input " + x.shape_str() + " vs encoder weight " +
                     p.enc_w.shape_str());
  AeForward f;
  f.z_hidden = add_bias_rows(matmul_nt(x, p.enc_w), p.enc_b);
  f.hidden = activate(p.enc_act, f.z_hidden);
  f.z_out = add_bias_rows(matmul_nt(f.hidden, p.dec_w), p.dec_b);
  f.out = activate(p.dec_act, f.z_out);
  return f;
}

double ae_loss(const AeParams& p, const Matrix& x, const Mask& mask) {
  return masked_sq_error(ae_forward(p, x).out, x, mask);
}

AeBackward denoising_backward(const AeParams& p, const Matrix& input, const Matrix& target,
                              const Mask& mask) {
  if (!input.same_shape(target))
    throw ShapeError("denoising_backward: input " + input.shape_str() + " vs target " +
                     target.shape_str());
  const AeForward f = ae_forward(p, input);

  // residual on observed cells only
  Matrix err(target.rows, target.cols);
  double loss = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (mask.data[i]) {
      const double d = target.data[i] - f.out.data[i];
      loss += d * d;
      err.data[i] = -2.0 * d;  // dL/dOut
    }
  }

  AeBackward bw;
  bw.loss = loss;
  Matrix g_out = hadamard(err, activate_grad(p.dec_act, f.z_out));
  bw.grads.dec_w = matmul_tn(g_out, f.hidden);
  bw.grads.dec_b = colsum(g_out);
  Matrix g_hidden = hadamard(matmul(g_out, p.dec_w), activate_grad(p.enc_act, f.z_hidden));
  bw.grads.enc_w = matmul_tn(g_hidden, input);
  bw.grads.enc_b = colsum(g_hidden);
  return bw;
}

AeBackward ae_backward(const AeParams& p, const Matrix& x, const Mask& mask) {
  return denoising_backward(p, x, x, mask);
}

Matrix corrupt(const Matrix& x, const CorruptionSpec& spec, Rng& rng) {
  validate_corruption(spec);
  switch (spec.kind) {
    case CorruptionKind::None:
      return x;
    case CorruptionKind::Masking: {
      Matrix out = x;
      for (double& v : out.data)
        if (rng.uniform(0.0, 1.0) < spec.level) v = 0.0;
      return out;
    }
    case CorruptionKind::GaussianAdditive: {
      Matrix out = x;
      for (double& v : out.data) v += rng.normal(0.0, spec.level);
      return out;
    }
  }
  return x;
}

std::string_view corruption_kind_name(CorruptionKind k) {
  switch (k) {
    case CorruptionKind::None: return "none";
    case CorruptionKind::Masking: return "masking";
    case CorruptionKind::GaussianAdditive: return "gaussian";
  }
  return "none";
}

CorruptionKind corruption_kind_from_name(std::string_view name) {
  if (name == "none") return CorruptionKind::None;
  if (name == "masking") return CorruptionKind::Masking;
  if (name == "gaussian") return CorruptionKind::GaussianAdditive;
  throw ConfigError("unknown corruption kind '" + std::string(name) +
                    "' (expected none|masking|gaussian)");
}

void validate_corruption(const CorruptionSpec& spec) {
  switch (spec.kind) {
    case CorruptionKind::None:
      return;
    case CorruptionKind::Masking:
      if (spec.level < 0.0 || spec.level > 1.0)
        throw ConfigError("masking corruption level must lie in [0, 1], got " +
                          std::to_string(spec.level));
      return;
    case CorruptionKind::GaussianAdditive:
      if (spec.level < 0.0)
        throw ConfigError("gaussian corruption level must be nonnegative, got " +
                          std::to_string(spec.level));
      return;
  }
}

TrainResult train_dae(AeParams& p, const Matrix& x, const Mask& mask, const CorruptionSpec& spec,
                      const TrainConfig& cfg, Rng* rng, const EpochFn& on_epoch) {
  validate_corruption(spec);
  if (cfg.epochs <= 0) throw ConfigError("epochs must be positive");
  if (mask.count() == 0)
    throw ConfigError("training data has no observed cells");
  if (spec.kind != CorruptionKind::None && rng == nullptr)
    throw ConfigError("corruption requires a random stream");

  AdamState s_enc_w(p.enc_w.size(), cfg.adam);
  AdamState s_enc_b(p.enc_b.size(), cfg.adam);
  AdamState s_dec_w(p.dec_w.size(), cfg.adam);
  AdamState s_dec_b(p.dec_b.size(), cfg.adam);

  TrainResult res;
  res.phases = 1;
  using clock = std::chrono::steady_clock;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto t0 = clock::now();
    const Matrix corrupted =
        spec.kind == CorruptionKind::None ? x : corrupt(x, spec, *rng);
    AeBackward bw = denoising_backward(p, corrupted, x, mask);
    if (!std::isfinite(bw.loss))
      throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1));
    adam_step(s_enc_w, p.enc_w, bw.grads.enc_w);
    adam_step(s_enc_b, p.enc_b, bw.grads.enc_b);
    adam_step(s_dec_w, p.dec_w, bw.grads.dec_w);
    adam_step(s_dec_b, p.dec_b, bw.grads.dec_b);
    res.seconds += std::chrono::duration<double>(clock::now() - t0).count();
    res.loss_trace.push_back(bw.loss);
    if (on_epoch) on_epoch(epoch, bw.loss);
  }
  return res;
}

TrainResult train_ae(AeParams& p, const Matrix& x, const Mask& mask, const TrainConfig& cfg,
                     const EpochFn& on_epoch) {
  return train_dae(p, x, mask, CorruptionSpec{}, cfg, nullptr, on_epoch);
}

}  // namespace sparseae
