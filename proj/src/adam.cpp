#include "sparseae/adam.hpp"

#include <cmath>
#include <string>

#include "sparseae/errors.hpp"

namespace sparseae {

AdamState::AdamState(std::size_t n, const AdamConfig& c)
    : m(n, 0.0), v(n, 0.0), cfg(c) {
  if (c.beta1 < 0.0 || c.beta1 >= 1.0 || c.beta2 < 0.0 || c.beta2 >= 1.0)
    throw ConfigError("adam: betas must lie in [0, 1)");
  if (c.epsilon <= 0.0) throw ConfigError("adam: epsilon must be positive");
}

void adam_step(AdamState& s, std::span<double> param, std::span<const double> grad) {
  if (param.size() != s.m.size() || grad.size() != s.m.size())
    throw ShapeError("adam_step: state tracks " + std::to_string(s.m.size()) +
                     " values, got param " + std::to_string(param.size()) + " and grad " +
                     std::to_string(grad.size()));
  s.t += 1;
  const double b1 = s.cfg.beta1;
  const double b2 = s.cfg.beta2;
  const double m_corr = 1.0 - std::pow(b1, static_cast<double>(s.t));
  const double v_corr = 1.0 - std::pow(b2, static_cast<double>(s.t));
  for (std::size_t i = 0; i < param.size(); ++i) {
    const double g = grad[i];
    s.m[i] = b1 * s.m[i] + (1.0 - b1) * g;
    s.v[i] = b2 * s.v[i] + (1.0 - b2) * g * g;
    const double m_hat = s.m[i] / m_corr;
    const double v_hat = s.v[i] / v_corr;
    param[i] -= s.cfg.lr * m_hat / (std::sqrt(v_hat) + s.cfg.epsilon);
  }
}

void adam_step(AdamState& s, Matrix& param, const Matrix& grad) {
  if (!param.same_shape(grad))
    throw ShapeError("adam_step: param " + param.shape_str() + " vs grad " + grad.shape_str());
  adam_step(s, std::span<double>(param.data), std::span<const double>(grad.data));
}

void adam_step(AdamState& s, std::vector<double>& param, const std::vector<double>& grad) {
  adam_step(s, std::span<double>(param), std::span<const double>(grad));
}

}  // namespace sparseae
