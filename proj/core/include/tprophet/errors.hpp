#pragma once

#include <stdexcept>
#include <string>

namespace tprophet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: index out of range, length mismatch, bad parameter.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured enumeration or size limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// The matroid violates a structural requirement (for example it has a loop).
class InvalidMatroidError : public Error {
 public:
  using Error::Error;
};

/// The operation does not support the given matroid kind.
class UnsupportedKindError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of the operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tprophet
