#pragma once

#include <stdexcept>
#include <string>

namespace cbo {

enum class ErrorCode {
  SingularPoint,
  OffManifold,
  ProjectionDiverged,
  UnsupportedSampler,
  DimensionMismatch,
  EmptyEnsemble,
  NonFiniteEnergy,
  NonFiniteState,
  OracleLimitExceeded,
  UnequalSupport,
  InsufficientRepeats,
  ReferencePathMissing,
  ParseError,
  ValidationError,
  IoError,
};

const char* error_code_name(ErrorCode code) noexcept;

/// Exit-code family for the CLI: 1 = configuration, 2 = runtime, 3 = I/O.
int exit_code_for(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cbo
