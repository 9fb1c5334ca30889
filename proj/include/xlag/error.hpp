#pragma once

#include <stdexcept>
#include <string>

namespace xlag {

enum class ErrorCode {
  invalid_argument = 1,  // caller supplied a value outside the documented domain
  domain = 2,            // evaluation point outside the function's domain (poles, rho = 0, ...)
  numeric = 3,           // a numerical procedure could not meet its accuracy contract
  io = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Invariant violation on a named input field. The message is prefixed with the field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(ErrorCode::invalid_argument, field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace xlag
