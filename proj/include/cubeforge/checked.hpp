#pragma once

#include <cstdint>
#include <string>

#include "cubeforge/error.hpp"

namespace cubeforge {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    fail(ErrorKind::Overflow, "sum " + std::to_string(a) + " + " + std::to_string(b) + " exceeds 64 bits");
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(a, b, &out))
    fail(ErrorKind::Overflow, "difference " + std::to_string(a) + " - " + std::to_string(b) + " exceeds 64 bits");
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    fail(ErrorKind::Overflow, "product " + std::to_string(a) + " * " + std::to_string(b) + " exceeds 64 bits");
  return out;
}

/// C(n, k) with overflow detection; C(n, k) = 0 when k > n.
inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    result = checked_mul(result, n - k + i) / i;
  }
  return result;
}

}  // namespace cubeforge
