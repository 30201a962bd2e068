#include "cichon/error.hpp"

namespace cichon {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::OrderCycle: return "OrderCycle";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::NonRegularFactor: return "NonRegularFactor";
    case ErrorKind::IncomparableFactors: return "IncomparableFactors";
    case ErrorKind::IncomparableNames: return "IncomparableNames";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::BadParameters: return "BadParameters";
    case ErrorKind::NotPreorder: return "NotPreorder";
    case ErrorKind::InvalidExpression: return "InvalidExpression";
    case ErrorKind::DivergentUniverse: return "DivergentUniverse";
    case ErrorKind::InconsistentBounds: return "InconsistentBounds";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::MissingAssumption: return "MissingAssumption";
    case ErrorKind::Unpinned: return "Unpinned";
    case ErrorKind::PlanOrderViolation: return "PlanOrderViolation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedName: return "UnresolvedName";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

}  // namespace cichon
