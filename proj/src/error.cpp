#include "cubeforge/error.hpp"

namespace cubeforge {

std::string_view kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Overflow: return "OverflowError";
    case ErrorKind::Window: return "WindowError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Cap: return "CapError";
    case ErrorKind::Shape: return "ShapeError";
    case ErrorKind::Timeout: return "TimeoutError";
    case ErrorKind::Precondition: return "PreconditionError";
    case ErrorKind::Degenerate: return "DegenerateError";
    case ErrorKind::NotPrime: return "NotPrimeError";
    case ErrorKind::Budget: return "BudgetError";
    case ErrorKind::Empty: return "EmptyError";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace cubeforge
