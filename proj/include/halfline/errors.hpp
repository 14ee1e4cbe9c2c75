#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace halfline {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent arguments (mismatched lattices, non-probability
/// input, a pole on the real axis, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Evaluation point outside the half-plane an operation is defined on.
class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Not enough traces to meet a requested truncation tolerance.
class InsufficientData : public InvalidInput {
 public:
  InsufficientData(const std::string& what, std::size_t required_n)
      : InvalidInput(what), required_n_(required_n) {}
  std::size_t required_n() const noexcept { return required_n_; }

 private:
  std::size_t required_n_;
};

/// Quadrature that fails to converge, evaluation too close to a singularity.
class NumericError : public Error {
 public:
  using Error::Error;
};

class NearSingularity : public NumericError {
 public:
  using NumericError::NumericError;
};

/// An exact identity that must hold did not; always a library bug.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace halfline
