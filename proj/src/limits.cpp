#include "cubeforge/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#include "cubeforge/error.hpp"

namespace cubeforge {

Limits Limits::from_env() {
  Limits limits;
  if (const char* raw = std::getenv("CUBEFORGE_BUDGET"); raw != nullptr && *raw != '\0') {
    std::uint64_t value = 0;
    const char* end = raw + std::strlen(raw);
    auto [ptr, ec] = std::from_chars(raw, end, value);
    require(ec == std::errc{} && ptr == end && value > 0, ErrorKind::Parse,
            "CUBEFORGE_BUDGET must be a positive integer");
    limits.node_budget = value;
  }
  return limits;
}

}  // namespace cubeforge
