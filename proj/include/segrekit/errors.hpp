#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace segrekit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        message_(message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

/// Well-formed input that violates a precondition: context mismatch,
/// unknown variable, point off the variety, dimension mismatch.
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// A size guard tripped (exponent overflow, Buchberger pair budget).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace segrekit
