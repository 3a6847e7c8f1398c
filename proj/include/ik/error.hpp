#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ik {

// Base for every error raised by the library. Callers that do not care about
// the category can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value fell outside the mathematical domain of an operation
// (ln of a non-positive number, atanh at +-1, a zero cell in a 2x2 table ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Shapes or lengths of the arguments do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument violates a documented precondition that is not a pure domain
// issue (k out of range, empty input, unknown name).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ik
