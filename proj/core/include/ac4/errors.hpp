#pragma once

#include <stdexcept>
#include <string>

namespace ac4 {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument or query outside the admissible domain.
struct DomainError : Error {
  using Error::Error;
};

/// A computed quantity failed an internal accuracy cross-check.
struct AccuracyError : Error {
  using Error::Error;
};

/// Malformed input file; `line` is 1-based.
struct ParseError : Error {
  int line;
  ParseError(const std::string& msg, int line_)
      : Error(msg + " (line " + std::to_string(line_) + ")"), line(line_) {}
};

}  // namespace ac4
