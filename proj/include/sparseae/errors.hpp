#pragma once

#include <stdexcept>
#include <string>

namespace sparseae {

/// Operand dimensions disagree; the message names both shapes.
class ShapeError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Invalid configuration or hyperparameter value.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input data; CSV messages carry file and line number.
class DataError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite values produced during optimization.
class NumericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Metric precondition violated (e.g. empty test set).
class EvalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sparseae
