#include "qpc/error.hpp"

namespace qpc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::StripExceeded: return "StripExceeded";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DuplicateMode: return "DuplicateMode";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NonCoprime: return "NonCoprime";
    case ErrorKind::RationalInput: return "RationalInput";
    case ErrorKind::NoConvergents: return "NoConvergents";
    case ErrorKind::EmptyProfile: return "EmptyProfile";
    case ErrorKind::WrongStratum: return "WrongStratum";
    case ErrorKind::NotHyperbolic: return "NotHyperbolic";
    case ErrorKind::DegenerateSplitting: return "DegenerateSplitting";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace qpc
