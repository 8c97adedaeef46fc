#pragma once

#include <stdexcept>
#include <string>

namespace hilbperv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller violated an operation's precondition (mismatched sizes, bad flags).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input: series files, ring documents, element specs.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Operation requested on a ring lacking the required pairing or diagonal data.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Ring data that parses but violates a structural requirement.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Workload or size limit exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Internal inconsistency: a quantity that must be integral or nonnegative was not.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Formal expansion that does not converge in the s-adic topology.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace hilbperv
