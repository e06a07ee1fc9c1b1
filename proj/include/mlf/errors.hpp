#pragma once

#include <stdexcept>
#include <string>

namespace mlf {

// Root of every error raised by the library. The CLI maps the concrete
// subclasses onto its exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain where an operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Gamma evaluated at a nonpositive integer.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A request that is mathematically valid but outside the accuracy domain of
// the chosen evaluator.
class AccuracyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Quadrature or sequence acceleration failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class DegenerateFitError : public FitError {
 public:
  using FitError::FitError;
};

// Numerically fitted behaviour contradicts the expected asymptotic law.
class LawMismatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace mlf
