#pragma once

#include <stdexcept>
#include <string>

namespace fieldroute {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input: bad TSPLIB records, scenario schema
/// problems, malformed result documents, I/O failures.
class InputError : public Error {
 public:
  using Error::Error;
};

class MalformedRecord : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedEdgeWeightType : public InputError {
 public:
  using InputError::InputError;
};

class SchemaViolation : public InputError {
 public:
  using InputError::InputError;
};

/// Well-formed input that breaks a model constraint (n <= m, nonpositive
/// machine rates, duplicate ids, ...).
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class InvalidDimensions : public ConstraintViolation {
 public:
  using ConstraintViolation::ConstraintViolation;
};

/// Caller broke an operation's precondition with numeric arguments.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace fieldroute
