#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sparsechar {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-prime p, reducible
/// modulus, out-of-range parameter, inversion of zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A desk-scale guard refused the request. `parameter()` names the limit.
class GuardViolation : public Error {
 public:
  GuardViolation(std::string parameter, const std::string& what)
      : Error(what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

/// Malformed text input. Positions are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A bound was requested whose nondegeneracy hypothesis could not be
/// certified for the given characters and functions.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace sparsechar
