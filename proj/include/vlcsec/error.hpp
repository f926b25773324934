#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace vlcsec {

/// Bad argument to an operation (non-finite value, out-of-domain input).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter set violates a model invariant (e.g. FOV, CSI bound).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent configuration (bad field, unknown key, unusable sweep).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Quadrature or contour evaluation failed to reach its error target.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed form produced a value that cannot be right (probability outside [0,1]).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw InputError(std::string(name) + " must be finite");
  }
}

}  // namespace detail
}  // namespace vlcsec
