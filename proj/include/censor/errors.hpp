#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace censor {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments, precondition violations, space/mode mismatches.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at position " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// State-space or enumeration size above the configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace censor
