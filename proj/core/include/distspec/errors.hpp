#pragma once

#include <stdexcept>
#include <string>

namespace distspec {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "InvalidArgument"; }
};

/// The threshold d does not exceed the minimum of the distance measure.
class DegenerateThreshold : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "DegenerateThreshold"; }
};

class EnumerationCapExceeded : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "EnumerationCapExceeded"; }
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "PreconditionViolated"; }
};

class NonConvergence : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "NonConvergence"; }
};

/// Malformed problem, distribution or channel input.
class ParseError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "ParseError"; }
};

}  // namespace distspec
