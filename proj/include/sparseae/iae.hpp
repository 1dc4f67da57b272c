#pragma once

#include <cstddef>

#include "sparseae/autoencoder.hpp"

namespace sparseae {

/// Integrated autoencoder: a first AE encodes-decodes the auxiliary matrix,
/// its output is joined column-wise to the target matrix and a second AE
/// reconstructs the joined block. Both AEs train jointly under one objective:
/// masked error on the target columns, full error on the auxiliary columns,
/// plus an L2 penalty on the second AE's weights.
struct IaeModel {
  AeParams aux_ae;    // input dim = aux column count
  AeParams joint_ae;  // input dim = target_cols + aux_ae output dim
  double l2_penalty = 0.01;
  std::size_t target_cols = 0;
};

IaeModel make_iae(std::size_t target_cols, std::size_t aux_cols, std::size_t hidden_aux,
                  std::size_t hidden_joint, double l2_penalty, Rng& rng,
                  Activation enc = Activation::Sigmoid, Activation dec = Activation::Identity);

struct IaeForward {
  AeForward aux;      // aux.out is the encoded-decoded auxiliary block
  Matrix joined;      // [v, aux.out]
  AeForward joint;    // joint.out is the reconstruction of `joined`
  Matrix prediction;  // first target_cols columns of joint.out
};

IaeForward iae_forward(const IaeModel& m, const Matrix& v, const Matrix& a);

/// Joint objective. `dense_target` switches the target columns from masked
/// to full error (the auxiliary columns are always dense).
double iae_loss(const IaeModel& m, const Matrix& v, const Matrix& a, const Mask& mask_v,
                bool dense_target = false);

struct IaeGradients {
  AeGradients aux_ae;
  AeGradients joint_ae;
};

struct IaeBackward {
  IaeGradients grads;
  double loss = 0.0;
};

/// Analytic gradients of iae_loss for all eight parameter grids. The
/// auxiliary reconstruction appears both as part of the joint AE's input and
/// as part of its target, so the aux AE's gradient accumulates two chain-rule
/// paths.
IaeBackward iae_backward(const IaeModel& m, const Matrix& v, const Matrix& a, const Mask& mask_v,
                         bool dense_target = false);

/// Single-phase joint training of all eight parameter grids with Adam.
TrainResult iae_train(IaeModel& m, const Matrix& v, const Matrix& a, const Mask& mask_v,
                      const TrainConfig& cfg, const EpochFn& on_epoch = {});

/// Dense prediction for every cell of v.
Matrix predict_iae(const IaeModel& m, const Matrix& v, const Matrix& a);

}  // namespace sparseae
