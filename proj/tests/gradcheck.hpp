#pragma once

// Finite-difference gradient checkers for every architecture. The loss is
// always re-evaluated through the forward path only, independent of the
// backward code under test.

#include "sparseae/autoencoder.hpp"
#include "sparseae/iae.hpp"
#include "sparseae/stack.hpp"
#include "support.hpp"

namespace testsupport {

using sparseae::AeBackward;
using sparseae::AeParams;
using sparseae::IaeModel;
using sparseae::LayerStack;

inline GradCheckResult check_ae_gradients(AeParams& p, const Matrix& input, const Matrix& target,
                                          const Mask& mask, double h = 1e-5) {
  const auto loss = [&] {
    return sparseae::masked_sq_error(sparseae::ae_forward(p, input).out, target, mask);
  };
  const AeBackward bw = sparseae::denoising_backward(p, input, target, mask);
  GradCheckResult res;
  check_grad_span(p.enc_w.data, bw.grads.enc_w.data, loss, h, "enc_w", res);
  check_grad_span(p.enc_b, bw.grads.enc_b, loss, h, "enc_b", res);
  check_grad_span(p.dec_w.data, bw.grads.dec_w.data, loss, h, "dec_w", res);
  check_grad_span(p.dec_b, bw.grads.dec_b, loss, h, "dec_b", res);
  return res;
}

inline GradCheckResult check_stack_gradients(LayerStack& net, const Matrix& x, const Mask& mask,
                                             double h = 1e-5) {
  const auto loss = [&] {
    return sparseae::masked_sq_error(sparseae::forward_stack(net, x), x, mask);
  };
  const auto bw = sparseae::stack_backward(net, x, mask);
  GradCheckResult res;
  for (std::size_t l = 0; l < net.size(); ++l) {
    const std::string tag = "layer" + std::to_string(l);
    check_grad_span(net[l].w.data, bw.grads[l].w.data, loss, h, tag + ".w", res);
    check_grad_span(net[l].b, bw.grads[l].b, loss, h, tag + ".b", res);
  }
  return res;
}

inline GradCheckResult check_iae_gradients(IaeModel& m, const Matrix& v, const Matrix& a,
                                           const Mask& mask_v, bool dense_target = false,
                                           double h = 1e-5) {
  const auto loss = [&] { return sparseae::iae_loss(m, v, a, mask_v, dense_target); };
  const auto bw = sparseae::iae_backward(m, v, a, mask_v, dense_target);
  GradCheckResult res;
  check_grad_span(m.aux_ae.enc_w.data, bw.grads.aux_ae.enc_w.data, loss, h, "aux.enc_w", res);
  check_grad_span(m.aux_ae.enc_b, bw.grads.aux_ae.enc_b, loss, h, "aux.enc_b", res);
  check_grad_span(m.aux_ae.dec_w.data, bw.grads.aux_ae.dec_w.data, loss, h, "aux.dec_w", res);
  check_grad_span(m.aux_ae.dec_b, bw.grads.aux_ae.dec_b, loss, h, "aux.dec_b", res);
  check_grad_span(m.joint_ae.enc_w.data, bw.grads.joint_ae.enc_w.data, loss, h, "joint.enc_w",
                  res);
  check_grad_span(m.joint_ae.enc_b, bw.grads.joint_ae.enc_b, loss, h, "joint.enc_b", res);
  check_grad_span(m.joint_ae.dec_w.data, bw.grads.joint_ae.dec_w.data, loss, h, "joint.dec_w",
                  res);
  check_grad_span(m.joint_ae.dec_b, bw.grads.joint_ae.dec_b, loss, h, "joint.dec_b", res);
  return res;
}

}  // namespace testsupport
