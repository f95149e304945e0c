#pragma once

#include <stdexcept>
#include <string>

namespace ostat {

/// Raised when a numerical procedure cannot deliver a result at the
/// requested accuracy (embedding, quadrature, factorization).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmbeddingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class FactorizationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ostat
