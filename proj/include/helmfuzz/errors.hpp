#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helmfuzz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Water depth at or below the draft (depth ratio undefined).
class InvalidDepth : public Error {
 public:
  using Error::Error;
};

/// Aggregated output set has (numerically) zero area, so the centroid is undefined.
class ZeroActivation : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid .fis text. Carries the 1-based source line (0 when the
/// problem is not tied to a single line, e.g. an incomplete rule matrix).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line), detail_(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

/// Invalid scenario configuration (bad key, value, or cross-field constraint).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Metrics requested on a log with no records.
class EmptyLog : public Error {
 public:
  using Error::Error;
};

}  // namespace helmfuzz
