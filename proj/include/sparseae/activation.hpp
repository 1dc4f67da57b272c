#pragma once

#include <string_view>

#include "sparseae/matrix.hpp"

namespace sparseae {

enum class Activation { Identity, Sigmoid, Tanh, Relu };

double activate_scalar(Activation a, double z);
double activate_grad_scalar(Activation a, double z);

/// Element-wise application of the activation to z.
Matrix activate(Activation a, const Matrix& z);
/// Element-wise analytic derivative evaluated at z.
Matrix activate_grad(Activation a, const Matrix& z);

std::string_view activation_name(Activation a);
/// Throws ConfigError on an unknown name.
Activation activation_from_name(std::string_view name);

}  // namespace sparseae
