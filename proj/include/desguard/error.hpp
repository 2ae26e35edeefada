#pragma once

#include <stdexcept>
#include <string>

namespace desguard {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: unknown names, broken invariants,
/// mismatched alphabets.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for the given attack kinds,
/// e.g. enumerating the (infinite) image of an insertion-removal attack.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A standing assumption of the algorithm does not hold (the product test
/// requires a controllable specification).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// No common corrupted output exists for the requested pair.
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

}  // namespace desguard
