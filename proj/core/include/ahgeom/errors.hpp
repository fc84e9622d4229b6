#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ahg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text or manifold file. `position` is a 0-based byte
/// offset into the offending text (npos when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Bad command-line or API usage that is not a math failure.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Math-domain failure: log of a non-positive number, division by zero,
/// a singular metric, a degenerate plane and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation not defined for the requested dimension.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Linear dependence where independence is required.
class RankError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// J fails J^2 = -I or metric compatibility, or J is missing.
class StructureError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An iterative procedure ran out of budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ahg
