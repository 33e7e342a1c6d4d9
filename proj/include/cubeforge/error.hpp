#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cubeforge {

enum class ErrorKind {
  Overflow,
  Window,
  Range,
  Domain,
  Cap,
  Shape,
  Timeout,
  Precondition,
  Degenerate,
  NotPrime,
  Budget,
  Empty,
  Parse,
};

std::string_view kind_name(ErrorKind kind);

/// True for kinds caused by a configured resource limit rather than by the
/// input itself (window cap, enumeration cap, node budget).
constexpr bool is_resource_limit(ErrorKind kind) {
  return kind == ErrorKind::Window || kind == ErrorKind::Cap ||
         kind == ErrorKind::Timeout || kind == ErrorKind::Budget;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

/// A proved guarantee did not hold: a bug, not a bad input.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

inline void ensure(bool condition, const std::string& what) {
  if (!condition) throw InvariantViolation("invariant violated: " + what);
}

}  // namespace cubeforge
