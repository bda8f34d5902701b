#pragma once

#include <stdexcept>
#include <string>

namespace qpc {

enum class ErrorKind {
  StripExceeded,
  EmptyInput,
  DuplicateMode,
  ParseError,
  NotUnimodular,
  NonCoprime,
  RationalInput,
  NoConvergents,
  EmptyProfile,
  WrongStratum,
  NotHyperbolic,
  DegenerateSplitting,
  Inconclusive,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qpc
