#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plurigreen {

enum class ErrorCode {
  DimensionMismatch,
  ZeroLaurentCoordinate,
  LaurentRejected,
  ArityMismatch,
  IllegalLaurentComposition,
  InvalidSpec,
  Unsupported,
  RejectionStarved,
  BracketingFailed,
  DesignTooSmall,
  SolverStall,
  NoChart,
  FBounded,
  EmptyFiber,
  InconsistentDesigns,
  BallTooSmall,
  SpecIO,
  Parse,
};

/// Stable machine-readable name, e.g. "REJECTION_STARVED".
std::string_view error_code_name(ErrorCode code) noexcept;

/// True for codes that the CLI reports as solver failures (exit 3) rather
/// than spec/IO failures (exit 2).
bool is_solver_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plurigreen
