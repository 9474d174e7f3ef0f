#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poromt {

/// Failure categories of the core library. Each one maps to a distinct
/// status code of the C API and to a distinct CLI exit status.
enum class ErrorCode {
  InvalidArgument,
  Io,
  Parse,
  UnknownKey,
  MissingKey,
  NonPositiveParameter,
  EllipticityViolated,
  TooFewElements,
  NonFiniteSample,
  DimensionMismatch,
  SingularSystem,
  ResidualTooLarge,
  InsufficientHistory,
  NonPositiveEnergy,
  WindowTooSmall,
  StepNotRecorded,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// One failed constraint found by validate_params.
struct Violation {
  ErrorCode code;
  std::string name;  // parameter name, or "mu*xi-b^2"
  double value;
};

/// Thrown by validate_params; carries every violated constraint, not just
/// the first. code() is the code of the first violation.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace poromt
