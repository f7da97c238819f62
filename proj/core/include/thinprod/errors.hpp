#pragma once

#include <stdexcept>
#include <string>

#include "thinprod/rational.hpp"

namespace thinprod {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Residue even, out of range, or a malformed class list.
class InvalidResidueError : public Error {
 public:
  using Error::Error;
};

// Requested limit exceeds the configured hard cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Argument outside a function's domain (digamma at x <= 0, even p, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// L(s, chi0) has a pole at s = 1.
class PoleError : public Error {
 public:
  using Error::Error;
};

// Objects built over different moduli were combined.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// Too few data points for the requested computation.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// An internal residual exceeded its sanity threshold.
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Limit constant requested for a selection whose product diverges.
class UnbalancedSelectionError : public Error {
 public:
  UnbalancedSelectionError(const std::string& msg, int mu, Rational exponent)
      : Error(msg), mu(mu), predicted_exponent(exponent) {}

  int mu;
  Rational predicted_exponent;
};

}  // namespace thinprod
