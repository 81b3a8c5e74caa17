#include "lattrace/error.hpp"

namespace lattrace {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ImTooSmall:
      return "ImTooSmall";
    case ErrorCode::OutOfAnnulus:
      return "OutOfAnnulus";
    case ErrorCode::PoleAtLatticePoint:
      return "PoleAtLatticePoint";
    case ErrorCode::NotSquare:
      return "NotSquare";
    case ErrorCode::NotSymmetric:
      return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite:
      return "NotPositiveDefinite";
    case ErrorCode::NotEven:
      return "NotEven";
    case ErrorCode::BoundTooLarge:
      return "BoundTooLarge";
    case ErrorCode::TailBoundViolated:
      return "TailBoundViolated";
    case ErrorCode::PredictionMismatch:
      return "PredictionMismatch";
    case ErrorCode::CutoffTooLarge:
      return "CutoffTooLarge";
    case ErrorCode::NTooLarge:
      return "NTooLarge";
    case ErrorCode::ParityMismatch:
      return "ParityMismatch";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::IllConditioned:
      return "IllConditioned";
    case ErrorCode::ConfigError:
      return "ConfigError";
    case ErrorCode::LatticeFileError:
      return "LatticeFileError";
  }
  return "Unknown";
}

}  // namespace lattrace
