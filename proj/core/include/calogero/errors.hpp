#pragma once

#include <stdexcept>
#include <string>

namespace calogero {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Request exceeds a desk-scale size guard (factorial or exponential blowup).
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a pole of a Laurent expression (coincident particles or momenta).
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluated at (or too close to) a time where sin(omega t) = 0.
class CausticError : public Error {
 public:
  CausticError(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Exact linear system did not reach full column rank from the drawn samples.
class DegenerateSamplingError : public Error {
 public:
  using Error::Error;
};

/// Exact linear system is inconsistent: the ansatz space cannot satisfy it.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

/// A conjectured-integral coefficient came out non-integral.
class ConjectureViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace calogero
