#include "plurigreen/error.hpp"

namespace plurigreen {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::ZeroLaurentCoordinate: return "ZERO_LAURENT_COORDINATE";
    case ErrorCode::LaurentRejected: return "LAURENT_REJECTED";
    case ErrorCode::ArityMismatch: return "ARITY_MISMATCH";
    case ErrorCode::IllegalLaurentComposition: return "ILLEGAL_LAURENT_COMPOSITION";
    case ErrorCode::InvalidSpec: return "INVALID_SPEC";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::RejectionStarved: return "REJECTION_STARVED";
    case ErrorCode::BracketingFailed: return "BRACKETING_FAILED";
    case ErrorCode::DesignTooSmall: return "DESIGN_TOO_SMALL";
    case ErrorCode::SolverStall: return "SOLVER_STALL";
    case ErrorCode::NoChart: return "NO_CHART";
    case ErrorCode::FBounded: return "F_BOUNDED";
    case ErrorCode::EmptyFiber: return "EMPTY_FIBER";
    case ErrorCode::InconsistentDesigns: return "INCONSISTENT_DESIGNS";
    case ErrorCode::BallTooSmall: return "BALL_TOO_SMALL";
    case ErrorCode::SpecIO: return "SPEC_IO";
    case ErrorCode::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

bool is_solver_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::RejectionStarved:
    case ErrorCode::BracketingFailed:
    case ErrorCode::DesignTooSmall:
    case ErrorCode::SolverStall:
    case ErrorCode::FBounded:
    case ErrorCode::EmptyFiber:
    case ErrorCode::InconsistentDesigns: return true;
    default: return false;
  }
}

}  // namespace plurigreen
