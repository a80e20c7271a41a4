#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gqml {

enum class ErrorKind {
  // groupoid-core
  NonAssociative,
  BadIdentity,
  BadInverse,
  NotAnAction,
  ZeroSetWrong,
  NotSymmetric,
  NotSubadditive,
  NotGenerating,
  // convolution-algebra
  GroupoidMismatch,
  PointOutOfRange,
  BadExponent,
  // state-space
  ShapeMismatch,
  NotUnitVector,
  InvalidState,
  // metric-solver / rd-analysis
  FibreToleranceAmbiguous,
  EmptyBall,
  TooManyParameters,
  ZeroElement,
  // plumbing
  ParseError,
  InvalidArgument,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Validation failures carry a JSON
/// pointer into the groupoid spec document layout (e.g. "/group/cayley/1/2")
/// and the indices of a witness that violates the named axiom.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string pointer = {},
        std::vector<int> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& pointer() const noexcept { return pointer_; }
  const std::vector<int>& witness() const noexcept { return witness_; }

  /// True for the kinds a malformed or axiom-violating input can produce.
  bool is_validation_error() const noexcept;

 private:
  ErrorKind kind_;
  std::string pointer_;
  std::vector<int> witness_;
};

}  // namespace gqml
