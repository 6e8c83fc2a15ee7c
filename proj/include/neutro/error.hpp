#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace neutro {

enum class ErrorKind {
  SumNotOne,
  OutOfRange,
  TieViolation,
  ThresholdOutOfRange,
  BoundTooSmall,
  RetryLimitExceeded,
  Overflow,
  InvalidArgument,
  MissingAssignment,
  IndexOutOfRange,
  InvalidChoice,
  PreconditionViolated,
  DepthExceeded,
  NodeNotInTree,
  EmptyTree,
  InsufficientBranching,
  NotAMember,
  DuplicateMember,
  CompensationExhausted,
  ParseError,
  SchemaError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every library failure is reported through this type. `where()` carries the
// address of the offending element / node / member when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string where = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string where_;
  std::string detail_;
};

}  // namespace neutro
