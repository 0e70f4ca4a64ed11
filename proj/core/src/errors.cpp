#include "eop/errors.hpp"

namespace eop {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BadOrdering: return "BadOrdering";
    case ErrorKind::PoleAt: return "PoleAt";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::DegenerateMinor: return "DegenerateMinor";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::NeedsDerivative: return "NeedsDerivative";
    case ErrorKind::NotRealOnContour: return "NotRealOnContour";
    case ErrorKind::UnstableCount: return "UnstableCount";
    case ErrorKind::ConditionOneViolated: return "ConditionOneViolated";
    case ErrorKind::MomentDivergence: return "MomentDivergence";
    case ErrorKind::OutOfInterval: return "OutOfInterval";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace eop
