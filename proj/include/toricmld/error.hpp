#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricmld {

enum class ErrorCode {
  SingularMatrix,
  DimensionMismatch,
  NotSublattice,
  Degenerate,
  ZeroVector,
  NotInLattice,
  EmptyFan,
  NonSimplicial,
  WrongShape,
  TooLarge,
  InvalidWeights,
  InvalidMfs,
  DegenerateSimplex,
  NonSurjective,
  BadParameter,
  NotInBaseLattice,
  NoPairFound,
  PreconditionFailed,
  Parse,
  Internal,
};

std::string_view to_string(ErrorCode code);

// All library failures are reported through this type; `code()` lets callers
// branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace toricmld
