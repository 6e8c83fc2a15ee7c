#include "neutro/error.hpp"

namespace neutro {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SumNotOne: return "SumNotOne";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TieViolation: return "TieViolation";
    case ErrorKind::ThresholdOutOfRange: return "ThresholdOutOfRange";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::RetryLimitExceeded: return "RetryLimitExceeded";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MissingAssignment: return "MissingAssignment";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidChoice: return "InvalidChoice";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::NodeNotInTree: return "NodeNotInTree";
    case ErrorKind::EmptyTree: return "EmptyTree";
    case ErrorKind::InsufficientBranching: return "InsufficientBranching";
    case ErrorKind::NotAMember: return "NotAMember";
    case ErrorKind::DuplicateMember: return "DuplicateMember";
    case ErrorKind::CompensationExhausted: return "CompensationExhausted";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message,
                    const std::string& where) {
  std::string out(to_string(kind));
  if (!where.empty()) out += " at " + where;
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message, std::string where)
    : std::runtime_error(compose(kind, message, where)),
      kind_(kind),
      where_(std::move(where)),
      detail_(std::move(message)) {}

}  // namespace neutro
