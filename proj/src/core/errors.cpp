#include "errors.hpp"

#include <sstream>

namespace poromt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::EllipticityViolated: return "EllipticityViolated";
    case ErrorCode::TooFewElements: return "TooFewElements";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::NonPositiveEnergy: return "NonPositiveEnergy";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::StepNotRecorded: return "StepNotRecorded";
  }
  return "Unknown";
}

namespace {

std::string describe(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os.precision(17);
  os << "invalid parameters:";
  for (const auto& v : violations) {
    os << ' ' << to_string(v.code) << '(' << v.name << '=' << v.value << ')';
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorCode::InvalidArgument : violations.front().code,
            describe(violations)),
      violations_(std::move(violations)) {}

}  // namespace poromt
