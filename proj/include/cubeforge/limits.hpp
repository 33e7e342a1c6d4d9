#pragma once

#include <cstdint>

namespace cubeforge {

/// Resource caps shared by every search and DP kernel. Exceeding one is
/// always reported as an error, never as a truncated answer.
struct Limits {
  /// Maximum number of bit cells a DP window may allocate.
  std::uint64_t window_cells = std::uint64_t{1} << 30;
  /// Maximum GAP volume / subset count an enumeration may walk.
  std::uint64_t enumeration_cap = std::uint64_t{1} << 24;
  /// Maximum backtracking decisions per search.
  std::uint64_t node_budget = 1'000'000'000;
  /// Worker threads for searches that split at the top level.
  unsigned threads = 1;

  /// Defaults, with `node_budget` overridden by CUBEFORGE_BUDGET when set.
  static Limits from_env();
};

}  // namespace cubeforge
