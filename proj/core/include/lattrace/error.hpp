#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lattrace {

enum class ErrorCode {
  ImTooSmall,
  OutOfAnnulus,
  PoleAtLatticePoint,
  NotSquare,
  NotSymmetric,
  NotPositiveDefinite,
  NotEven,
  BoundTooLarge,
  TailBoundViolated,
  PredictionMismatch,
  CutoffTooLarge,
  NTooLarge,
  ParityMismatch,
  InvalidArgument,
  IllConditioned,
  ConfigError,
  LatticeFileError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every structured failure in the library is reported through this type; the
// code is machine readable, what() carries the human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lattrace
