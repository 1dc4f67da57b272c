#include "sparseae/activation.hpp"

#include <cmath>

#include "sparseae/errors.hpp"

namespace sparseae {

double activate_scalar(Activation a, double z) {
  switch (a) {
    case Activation::Identity: return z;
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::Tanh: return std::tanh(z);
    case Activation::Relu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

double activate_grad_scalar(Activation a, double z) {
  switch (a) {
    case Activation::Identity: return 1.0;
    case Activation::Sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
    case Activation::Tanh: {
      const double t = std::tanh(z);
      return 1.0 - t * t;
    }
    case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

Matrix activate(Activation a, const Matrix& z) {
  Matrix out = z;
  for (double& v : out.data) v = activate_scalar(a, v);
  return out;
}

Matrix activate_grad(Activation a, const Matrix& z) {
  Matrix out = z;
  for (double& v : out.data) v = activate_grad_scalar(a, v);
  return out;
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
  }
  return "identity";
}

Activation activation_from_name(std::string_view name) {
  if (name == "identity") return Activation::Identity;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "tanh") return Activation::Tanh;
  if (name == "relu") return Activation::Relu;
  throw ConfigError("unknown activation '" + std::string(name) +
                    "' (expected identity|sigmoid|tanh|relu)");
}

}  // namespace sparseae
