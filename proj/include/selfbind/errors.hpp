#pragma once

#include <stdexcept>
#include <string>

namespace selfbind {

/// Base class for numerical failures (non-convergence, quadrature stalls).
/// Invalid arguments are reported with std::invalid_argument / std::domain_error.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The imaginary-time flow shrank the cloud below the grid resolution.
class CollapseError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace selfbind
