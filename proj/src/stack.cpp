#include "sparseae/stack.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "sparseae/errors.hpp"

namespace sparseae {

StackModel make_stack(std::size_t input, std::span<const std::size_t> hidden_sizes, Rng& rng,
                      Activation enc, Activation dec) {
  if (hidden_sizes.empty()) throw ConfigError("stack needs at least one layer");
  StackModel s;
  std::size_t in = input;
  for (std::size_t h : hidden_sizes) {
    s.layers.push_back(make_autoencoder(in, h, rng, enc, dec));
    in = h;
  }
  return s;
}

std::vector<PhaseResult> stack_pretrain(StackModel& stack, const Matrix& x, const Mask& mask,
                                        const CorruptionSpec& spec, const TrainConfig& cfg,
                                        Rng* rng) {
  if (stack.layers.empty()) throw ConfigError("cannot pre-train an empty stack");
  for (std::size_t i = 1; i < stack.layers.size(); ++i) {
    if (stack.layers[i].input_dim() != stack.layers[i - 1].hidden_dim())
      throw ShapeError("stack: layer " + std::to_string(i) + " input " +
                       stack.layers[i].enc_w.shape_str() + " does not chain onto layer " +
                       std::to_string(i - 1) + " hidden " + stack.layers[i - 1].enc_w.shape_str());
  }

  std::vector<PhaseResult> phases;
  Matrix input = x;
  Mask layer_mask = mask;
  for (std::size_t i = 0; i < stack.layers.size(); ++i) {
    TrainResult r = train_dae(stack.layers[i], input, layer_mask, spec, cfg, rng);
    phases.push_back(PhaseResult{std::move(r.loss_trace), r.seconds});
    // propagate the clean encoder output; hidden representations are dense
    const AeForward f = ae_forward(stack.layers[i], input);
    input = f.hidden;
    layer_mask = Mask(input.rows, input.cols, true);
  }
  return phases;
}

LayerStack unroll(const StackModel& stack) {
  LayerStack net;
  for (const AeParams& p : stack.layers)
    net.push_back(DenseLayer{p.enc_w, p.enc_b, p.enc_act});
  for (auto it = stack.layers.rbegin(); it != stack.layers.rend(); ++it)
    net.push_back(DenseLayer{it->dec_w, it->dec_b, it->dec_act});
  return net;
}

Matrix forward_stack(const LayerStack& net, const Matrix& x) {
  Matrix a = x;
  for (const DenseLayer& l : net)
    a = activate(l.act, add_bias_rows(matmul_nt(a, l.w), l.b));
  return a;
}

StackBackward stack_backward(const LayerStack& net, const Matrix& x, const Mask& mask) {
  const std::size_t depth = net.size();
  std::vector<Matrix> inputs(depth);      // input of each layer
  std::vector<Matrix> pre_act(depth);     // pre-activation of each layer
  Matrix a = x;
  for (std::size_t l = 0; l < depth; ++l) {
    inputs[l] = a;
    pre_act[l] = add_bias_rows(matmul_nt(a, net[l].w), net[l].b);
    a = activate(net[l].act, pre_act[l]);
  }

  Matrix err(a.rows, a.cols);
  double loss = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (mask.data[i]) {
      const double d = x.data[i] - a.data[i];
      loss += d * d;
      err.data[i] = -2.0 * d;
    }
  }

  StackBackward bw;
  bw.loss = loss;
  bw.grads.resize(depth);
  Matrix g = err;
  for (std::size_t l = depth; l-- > 0;) {
    Matrix g_z = hadamard(g, activate_grad(net[l].act, pre_act[l]));
    bw.grads[l].w = matmul_tn(g_z, inputs[l]);
    bw.grads[l].b = colsum(g_z);
    if (l > 0) g = matmul(g_z, net[l].w);
  }
  return bw;
}

TrainResult stack_finetune(LayerStack& net, const Matrix& x, const Mask& mask,
                           const TrainConfig& cfg, const EpochFn& on_epoch) {
  if (net.empty()) throw ConfigError("cannot fine-tune an empty network");
  if (cfg.epochs <= 0) throw ConfigError("epochs must be positive");
  if (mask.count() == 0) throw ConfigError("training data has no observed cells");

  std::vector<AdamState> s_w, s_b;
  s_w.reserve(net.size());
  s_b.reserve(net.size());
  for (const DenseLayer& l : net) {
    s_w.emplace_back(l.w.size(), cfg.adam);
    s_b.emplace_back(l.b.size(), cfg.adam);
  }

  TrainResult res;
  res.phases = 1;
  using clock = std::chrono::steady_clock;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto t0 = clock::now();
    StackBackward bw = stack_backward(net, x, mask);
    if (!std::isfinite(bw.loss))
      throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1));
    for (std::size_t l = 0; l < net.size(); ++l) {
      adam_step(s_w[l], net[l].w, bw.grads[l].w);
      adam_step(s_b[l], net[l].b, bw.grads[l].b);
    }
    res.seconds += std::chrono::duration<double>(clock::now() - t0).count();
    res.loss_trace.push_back(bw.loss);
    if (on_epoch) on_epoch(epoch, bw.loss);
  }
  return res;
}

}  // namespace sparseae
