#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hgr {

enum class ErrorKind {
  EmptyHypergraph,
  NotABijection,
  IncompleteMapping,
  ParseError,
  DuplicateEdge,
  InvalidWeight,
  InvalidSize,
  InvalidWeights,
  CannotBeConnected,
  NotNormalized,
  InvalidArgument,
  Unseen,
  UndefinedRatio,
  NotShared,
  EmptyDataset,
  NothingRecovered,
  SizeMismatch,
  TooLarge,
  AmbiguousLabels,
  NotAnIsomorphism,
  NoIsomorphism,
  InconsistentAnchors,
  HypothesisViolated,
  InvalidForLogFit,
  UnknownEntity,
  EmptyEntities,
  UndefinedScore,
  AuthError,
  HttpError,
  NetworkError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Domain error carrying a machine-checkable kind. what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hgr
