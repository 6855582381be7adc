#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hkm {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exponent arithmetic left the representable range.
class ExponentOverflow : public Error {
 public:
  using Error::Error;
};

/// Operands belong to different rings (modulus, variables or order differ).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Text could not be parsed. Positions are 1-based; line is 0 for single-line input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(format(message, line, column)), line_(line), column_(column), detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  static std::string format(const std::string& message, std::size_t line, std::size_t column) {
    if (line == 0) return "column " + std::to_string(column) + ": " + message;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
  }

  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// A configured work budget was exhausted. Never a mathematical answer.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (non m-primary ideal, too few samples, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a declared invariant (ring spec validation, corpus metadata).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hkm
