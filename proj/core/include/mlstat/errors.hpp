#pragma once

#include <stdexcept>
#include <string>

namespace mlstat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing configuration, unknown names, unparsable files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Precondition violations on arguments (nonpositive lengths, index out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Non-finite values, overflow, unroundable estimates.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A point that does not describe a hyperbolic structure (trace <= 2 and friends).
class GeometryError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace mlstat
