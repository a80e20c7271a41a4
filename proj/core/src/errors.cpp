#include "gqml/errors.hpp"

#include <utility>

namespace gqml {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadIdentity: return "BadIdentity";
    case ErrorKind::BadInverse: return "BadInverse";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::ZeroSetWrong: return "ZeroSetWrong";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotSubadditive: return "NotSubadditive";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::GroupoidMismatch: return "GroupoidMismatch";
    case ErrorKind::PointOutOfRange: return "PointOutOfRange";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotUnitVector: return "NotUnitVector";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::FibreToleranceAmbiguous: return "FibreToleranceAmbiguous";
    case ErrorKind::EmptyBall: return "EmptyBall";
    case ErrorKind::TooManyParameters: return "TooManyParameters";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::string pointer,
             std::vector<int> witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      pointer_(std::move(pointer)),
      witness_(std::move(witness)) {}

bool Error::is_validation_error() const noexcept {
  switch (kind_) {
    case ErrorKind::FibreToleranceAmbiguous:
    case ErrorKind::Internal:
      return false;
    default:
      return true;
  }
}

}  // namespace gqml
