#include "sparseae/iae.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "sparseae/errors.hpp"

namespace sparseae {

namespace {

void check_inputs(const IaeModel& m, const Matrix& v, const Matrix& a) {
  if (v.rows != a.rows)
    throw ShapeError("iae: target " + v.shape_str() + " and auxiliary " + a.shape_str() +
                     " must share row count");
  if (a.cols != m.aux_ae.input_dim())
    throw ShapeError("iae: auxiliary " + a.shape_str() + " vs first encoder weight " +
                     m.aux_ae.enc_w.shape_str());
  if (v.cols != m.target_cols)
    throw ShapeError("iae: target has " + std::to_string(v.cols) + " columns, model expects " +
                     std::to_string(m.target_cols));
}

/// Mask over the joined block: target columns per mask_v (or all when dense),
/// auxiliary columns always on.
Mask joined_mask(const Mask& mask_v, std::size_t aux_cols, bool dense_target) {
  Mask m(mask_v.rows, mask_v.cols + aux_cols, true);
  if (!dense_target) {
    for (std::size_t i = 0; i < mask_v.rows; ++i)
      for (std::size_t j = 0; j < mask_v.cols; ++j)
        m(i, j) = mask_v(i, j);
  }
  return m;
}

}  // namespace

IaeModel make_iae(std::size_t target_cols, std::size_t aux_cols, std::size_t hidden_aux,
                  std::size_t hidden_joint, double l2_penalty, Rng& rng, Activation enc,
                  Activation dec) {
  if (l2_penalty < 0.0) throw ConfigError("l2 penalty must be nonnegative");
  if (target_cols == 0) throw ConfigError("target must have at least one column");
  IaeModel m;
  m.aux_ae = make_autoencoder(aux_cols, hidden_aux, rng, enc, dec);
  m.joint_ae = make_autoencoder(target_cols + aux_cols, hidden_joint, rng, enc, dec);
  m.l2_penalty = l2_penalty;
  m.target_cols = target_cols;
  return m;
}

IaeForward iae_forward(const IaeModel& m, const Matrix& v, const Matrix& a) {
  check_inputs(m, v, a);
  IaeForward f;
  f.aux = ae_forward(m.aux_ae, a);
  f.joined = hconcat(v, f.aux.out);
  f.joint = ae_forward(m.joint_ae, f.joined);
  f.prediction = slice_cols(f.joint.out, 0, m.target_cols);
  return f;
}

double iae_loss(const IaeModel& m, const Matrix& v, const Matrix& a, const Mask& mask_v,
                bool dense_target) {
  if (mask_v.rows != v.rows || mask_v.cols != v.cols)
    throw ShapeError("iae_loss: mask " + mask_v.shape_str() + " vs target " + v.shape_str());
  const IaeForward f = iae_forward(m, v, a);
  const Mask jm = joined_mask(mask_v, f.aux.out.cols, dense_target);
  return masked_sq_error(f.joint.out, f.joined, jm) +
         0.5 * m.l2_penalty * (frobenius_sq(m.joint_ae.enc_w) + frobenius_sq(m.joint_ae.dec_w));
}

IaeBackward iae_backward(const IaeModel& m, const Matrix& v, const Matrix& a, const Mask& mask_v,
                         bool dense_target) {
  if (mask_v.rows != v.rows || mask_v.cols != v.cols)
    throw ShapeError("iae_backward: mask " + mask_v.shape_str() + " vs target " + v.shape_str());
  const IaeForward f = iae_forward(m, v, a);
  const std::size_t aux_cols = f.aux.out.cols;
  const Mask jm = joined_mask(mask_v, aux_cols, dense_target);

  // residual over the joined block
  Matrix err(f.joined.rows, f.joined.cols);
  double loss = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    if (jm.data[i]) {
      const double d = f.joined.data[i] - f.joint.out.data[i];
      loss += d * d;
      err.data[i] = -2.0 * d;  // dL/d(recon)
    }
  }
  loss += 0.5 * m.l2_penalty *
          (frobenius_sq(m.joint_ae.enc_w) + frobenius_sq(m.joint_ae.dec_w));

  IaeBackward bw;
  bw.loss = loss;

  // joint AE
  Matrix g_out = hadamard(err, activate_grad(m.joint_ae.dec_act, f.joint.z_out));
  bw.grads.joint_ae.dec_w = matmul_tn(g_out, f.joint.hidden);
  bw.grads.joint_ae.dec_b = colsum(g_out);
  Matrix g_hidden =
      hadamard(matmul(g_out, m.joint_ae.dec_w), activate_grad(m.joint_ae.enc_act, f.joint.z_hidden));
  bw.grads.joint_ae.enc_w = matmul_tn(g_hidden, f.joined);
  bw.grads.joint_ae.enc_b = colsum(g_hidden);
  for (std::size_t i = 0; i < bw.grads.joint_ae.enc_w.size(); ++i)
    bw.grads.joint_ae.enc_w.data[i] += m.l2_penalty * m.joint_ae.enc_w.data[i];
  for (std::size_t i = 0; i < bw.grads.joint_ae.dec_w.size(); ++i)
    bw.grads.joint_ae.dec_w.data[i] += m.l2_penalty * m.joint_ae.dec_w.data[i];

  // The joined block feeds the joint AE's input AND stands as its target;
  // dL/d(joined) therefore carries both paths:  g_hidden * enc_w  - 2 * residual.
  Matrix g_joined = matmul(g_hidden, m.joint_ae.enc_w);
  for (std::size_t i = 0; i < g_joined.size(); ++i) g_joined.data[i] -= err.data[i];

  // only the auxiliary columns of g_joined reach parameters
  Matrix g_aux_out = slice_cols(g_joined, m.target_cols, m.target_cols + aux_cols);

  // aux AE
  Matrix g_aux_z = hadamard(g_aux_out, activate_grad(m.aux_ae.dec_act, f.aux.z_out));
  bw.grads.aux_ae.dec_w = matmul_tn(g_aux_z, f.aux.hidden);
  bw.grads.aux_ae.dec_b = colsum(g_aux_z);
  Matrix g_aux_hidden =
      hadamard(matmul(g_aux_z, m.aux_ae.dec_w), activate_grad(m.aux_ae.enc_act, f.aux.z_hidden));
  bw.grads.aux_ae.enc_w = matmul_tn(g_aux_hidden, a);
  bw.grads.aux_ae.enc_b = colsum(g_aux_hidden);
  return bw;
}

TrainResult iae_train(IaeModel& m, const Matrix& v, const Matrix& a, const Mask& mask_v,
                      const TrainConfig& cfg, const EpochFn& on_epoch) {
  if (cfg.epochs <= 0) throw ConfigError("epochs must be positive");
  if (mask_v.count() == 0) throw ConfigError("training data has no observed cells");
  check_inputs(m, v, a);

  AdamState s1w(m.aux_ae.enc_w.size(), cfg.adam), s1b(m.aux_ae.enc_b.size(), cfg.adam);
  AdamState s1wo(m.aux_ae.dec_w.size(), cfg.adam), s1bo(m.aux_ae.dec_b.size(), cfg.adam);
  AdamState s2w(m.joint_ae.enc_w.size(), cfg.adam), s2b(m.joint_ae.enc_b.size(), cfg.adam);
  AdamState s2wo(m.joint_ae.dec_w.size(), cfg.adam), s2bo(m.joint_ae.dec_b.size(), cfg.adam);

  TrainResult res;
  res.phases = 1;
  using clock = std::chrono::steady_clock;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto t0 = clock::now();
    IaeBackward bw = iae_backward(m, v, a, mask_v, cfg.dense_target_loss);
    if (!std::isfinite(bw.loss))
      throw NumericError("non-finite loss at epoch " + std::to_string(epoch + 1));
    adam_step(s1w, m.aux_ae.enc_w, bw.grads.aux_ae.enc_w);
    adam_step(s1b, m.aux_ae.enc_b, bw.grads.aux_ae.enc_b);
    adam_step(s1wo, m.aux_ae.dec_w, bw.grads.aux_ae.dec_w);
    adam_step(s1bo, m.aux_ae.dec_b, bw.grads.aux_ae.dec_b);
    adam_step(s2w, m.joint_ae.enc_w, bw.grads.joint_ae.enc_w);
    adam_step(s2b, m.joint_ae.enc_b, bw.grads.joint_ae.enc_b);
    adam_step(s2wo, m.joint_ae.dec_w, bw.grads.joint_ae.dec_w);
    adam_step(s2bo, m.joint_ae.dec_b, bw.grads.joint_ae.dec_b);
    res.seconds += std::chrono::duration<double>(clock::now() - t0).count();
    res.loss_trace.push_back(bw.loss);
    if (on_epoch) on_epoch(epoch, bw.loss);
  }
  return res;
}

Matrix predict_iae(const IaeModel& m, const Matrix& v, const Matrix& a) {
  return iae_forward(m, v, a).prediction;
}

}  // namespace sparseae
