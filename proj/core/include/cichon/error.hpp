#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cichon {

enum class ErrorKind {
  DuplicateName,
  OrderCycle,
  UnknownName,
  NonRegularFactor,
  IncomparableFactors,
  IncomparableNames,
  SizeLimit,
  SearchSpaceTooLarge,
  BadParameters,
  NotPreorder,
  InvalidExpression,
  DivergentUniverse,
  InconsistentBounds,
  PreconditionFailed,
  MissingAssumption,
  Unpinned,
  PlanOrderViolation,
  SyntaxError,
  UnresolvedName,
};

std::string_view to_string(ErrorKind kind);

/// Every engine failure carries a kind so callers (and the CLI's exit codes)
/// can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace cichon
