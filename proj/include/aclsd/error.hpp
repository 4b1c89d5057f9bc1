#pragma once

#include <stdexcept>
#include <string>

namespace aclsd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-finite or otherwise unusable arguments.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Argument is outside the domain where a formula is defined (x = 0, Im z <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A polynomial degenerates at the requested parameter (y1 at c = 1).
class DegenerateCoefficient : public Error {
 public:
  using Error::Error;
};

// A pole of the psi integrand sits on the unit circle (|u| = 1).
class PoleOnContour : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (e.g. a non-Hermitian matrix).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Requested problem size exceeds the configured guard.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature ran out of refinement depth. Carries the best estimate.
class AccuracyFailure : public Error {
 public:
  AccuracyFailure(const std::string& what, double best_estimate)
      : Error(what), best_estimate_(best_estimate) {}
  double best_estimate() const noexcept { return best_estimate_; }

 private:
  double best_estimate_;
};

}  // namespace aclsd
