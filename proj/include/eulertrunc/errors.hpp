#pragma once

#include <stdexcept>
#include <string>

namespace eulertrunc {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A parameter violates a theorem hypothesis (window on y, alpha, A, a, ...).
class ParameterWindowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Requested resources (prime table size, tolerance) cannot be provided.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// The prime table does not reach the requested bound.
class InsufficientTableError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a pole, e.g. L(s, principal) or zeta(1, a).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A series that only converges for alpha > 1/2 was requested outside that range.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Continuation of log L along the real axis met a (near) zero of L.
class BranchTrackingError : public Error {
 public:
  using Error::Error;
};

}  // namespace eulertrunc
