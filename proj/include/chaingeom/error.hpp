#pragma once

#include <stdexcept>
#include <string>

namespace chaingeom {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed descriptor, precondition violation, mismatched owners.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// The request is well formed but mathematically impossible
/// (inverse of zero, a morphism whose inclusion condition fails, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace chaingeom
