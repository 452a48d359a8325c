#pragma once

#include <stdexcept>
#include <string>

namespace snzlab {

// Thrown when a caller violates a documented precondition of a public
// operation (bad range, malformed value, mismatched sizes, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Syntax error raised by the clopen expression parser.  Carries the 1-based
// source position so callers can point at the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace snzlab
