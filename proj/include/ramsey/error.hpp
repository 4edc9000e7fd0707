#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Block shapes disagree with each other or with the partition.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a documented precondition (definiteness, ranges,
/// non-finite entries, malformed model files).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be inverted is numerically singular.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A dense eigenvalue computation failed to converge.
class EigenError : public Error {
 public:
  using Error::Error;
};

/// A simulated trajectory produced a non-finite value.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, std::size_t period)
      : Error(what), period_(period) {}

  std::size_t period() const noexcept { return period_; }

 private:
  std::size_t period_;
};

}  // namespace ramsey
