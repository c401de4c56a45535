#pragma once

#include <stdexcept>
#include <string>

namespace randlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structural invariant was violated (inconsistent functional, non-monotone
/// schedule, measure bound exceeded on input, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed an explicit enumeration guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace randlab
