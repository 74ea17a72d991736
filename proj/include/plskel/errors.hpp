#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plskel {

enum class ErrorCode {
  DependentGenerators,
  NonPrimeValuation,
  InvalidGenerator,
  NotInGroup,
  RegistryMismatch,
  DimensionMismatch,
  EmptyCell,
  StrictAtomPresent,
  NotQuantifierFree,
  EmptyDefinable,
  InsufficientInfRank,
  NonCompactSource,
  NotAnAction,
  PointOutsideSource,
  ZeroComponent,
  SyntaxError,
  ValidationError,
  UnknownCommand,
  UnknownName,
  ResourceCap,
};

std::string_view error_name(ErrorCode code);

// All failures raised by the library. Resource exhaustion is reported
// separately by the CLI (exit 2); every other code is an input error (exit 1).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  bool is_resource_cap() const noexcept { return code_ == ErrorCode::ResourceCap; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t col, const std::string& what)
      : Error(ErrorCode::SyntaxError,
              std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t line_;
  std::size_t col_;
};

}  // namespace plskel
