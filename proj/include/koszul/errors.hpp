#ifndef KOSZUL_ERRORS_HPP
#define KOSZUL_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace koszul {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text; line and column are 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(format(what, line, column)), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0 && column == 0) return what;
    if (line == 0) return "column " + std::to_string(column) + ": " + what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates an invariant (inhomogeneous relator, non-prime field, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A hypothesis of the requested computation fails (e.g. n not invertible in the field).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A degree piece would exceed the configured dimension guard.
class ResourceLimitExceeded : public Error {
 public:
  using Error::Error;
};

/// A convention bug: a map failed to descend to a quotient, an identity that must hold did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace koszul

#endif  // KOSZUL_ERRORS_HPP
