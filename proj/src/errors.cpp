#include "cbo/errors.hpp"

namespace cbo {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::OffManifold: return "OffManifold";
    case ErrorCode::ProjectionDiverged: return "ProjectionDiverged";
    case ErrorCode::UnsupportedSampler: return "UnsupportedSampler";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::NonFiniteEnergy: return "NonFiniteEnergy";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::OracleLimitExceeded: return "OracleLimitExceeded";
    case ErrorCode::UnequalSupport: return "UnequalSupport";
    case ErrorCode::InsufficientRepeats: return "InsufficientRepeats";
    case ErrorCode::ReferencePathMissing: return "ReferencePathMissing";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
      return 1;
    case ErrorCode::IoError:
      return 3;
    default:
      return 2;
  }
}

}  // namespace cbo
