#pragma once

#include <stdexcept>
#include <string>

namespace qhblow {

/// Malformed caller input (dimension mismatch, invalid type vector, ...).
struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Evaluation requested outside the closed disc / chart domain.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Point at infinity has no finite preimage.
struct horizon_error : domain_error {
  using domain_error::domain_error;
};

/// Requested chart does not cover the point, or the chart matrix is singular.
struct chart_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical procedure failed to converge.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation preconditions not met (nonhyperbolic target, insufficient data, ...).
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qhblow
