#pragma once

#include <stdexcept>
#include <string>

namespace eop {

enum class ErrorKind {
  NonFinite,
  BadOrdering,
  PoleAt,
  ToleranceNotMet,
  EvaluationFailure,
  ParameterOutOfRange,
  DegenerateMinor,
  ZeroFunction,
  NeedsDerivative,
  NotRealOnContour,
  UnstableCount,
  ConditionOneViolated,
  MomentDivergence,
  OutOfInterval,
  DegenerateDenominator,
  Config,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, long index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Minor order for DegenerateMinor, node count for ToleranceNotMet, otherwise -1.
  long index() const noexcept { return index_; }

 private:
  ErrorKind kind_;
  long index_;
};

}  // namespace eop
