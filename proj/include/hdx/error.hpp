#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hdx {

enum class ErrorKind {
  EmptyInput,
  NonPure,
  PartiteViolation,
  NonpositiveWeight,
  DuplicateFacet,
  UnknownVertex,
  FaceNotInComplex,
  LevelOutOfRange,
  NotPartite,
  GroundSetOverlap,
  CodimTooSmall,
  Disconnected,
  EmptyOrFullSet,
  WrongDimension,
  IndexOutOfRange,
  ConditionUnsatisfiable,
  DeltaOutOfRange,
  HypothesisViolated,
  DenominatorNonpositive,
  CertificateInvalid,
  NoProperColoring,
  BadParams,
  SizeCap,
  ConnectivityUnreachable,
  MalformedInput,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this exception; `kind()` is
/// stable and used by the CLI to pick exit codes and messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hdx
