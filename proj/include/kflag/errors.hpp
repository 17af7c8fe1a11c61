#pragma once

#include <stdexcept>
#include <string>

namespace kflag {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid Cartan type / rank pair, malformed run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller broke a precondition (mixed root systems, non-reduced word, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Division by zero or a denominator that cannot be represented.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// A substitution made a denominator factor vanish.
class PoleError : public ArithmeticError {
 public:
  using ArithmeticError::ArithmeticError;
};

/// A mathematical identity that must hold did not. Carries a readable witness.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Configured size cap exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace kflag
