#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubeforge/coloring.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

enum class RamseyKind { VanDerWaerden, Hilbert };

std::string_view kind_label(RamseyKind kind);  // "vdw" / "hilbert"

/// Outcome of an exact Ramsey-number search over n = 1..n_max.
///
/// When `exact`, `value` is the certified number: `witness` is a good coloring
/// of [value-1] that passes the detector, and an exhaustive search of [value]
/// finds none (`exhaustion_nodes` decisions). Otherwise every n <= n_max admits
/// a good coloring; `value` is then n_max, the largest certified good length,
/// and `witness` colors [n_max].
struct RamseyResult {
  RamseyKind kind = RamseyKind::VanDerWaerden;
  std::int64_t k = 0;
  int r = 0;
  std::int64_t n_max = 0;
  bool exact = false;
  std::int64_t value = 0;
  std::optional<Coloring> witness;
  std::uint64_t search_nodes = 0;
  std::uint64_t exhaustion_nodes = 0;
};

/// W(k, r). W(1, r) = 1 and W(2, r) = r + 1 are answered directly.
RamseyResult vdw_number(std::int64_t k, int r, std::int64_t n_max, const Limits& limits = {});

/// h(k, r) over cubes x0 + Σ*A with A a set of k distinct positive integers.
RamseyResult hilbert_number(std::int64_t k, int r, std::int64_t n_max, const Limits& limits = {});

struct CensusResult {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t u = 0;
  std::uint64_t subsets = 0;  // C(n, k)
  std::uint64_t count = 0;    // k-subsets S of [n] with |Σ*S| <= u
  double log2_bound = 0.0;    // log2 of (kn)^(log2 u) u^(2k)
  double bound = 0.0;         // may be +inf when it overflows a double
  bool pass = false;          // count <= bound
};

/// Counts k-subsets of [n] with few subset sums and compares against
/// (kn)^(log2 u) · u^(2k). Requires u >= k(k+1)/2; BudgetError when C(n, k)
/// exceeds limits.enumeration_cap.
CensusResult census_small_sumsets(std::int64_t n, std::int64_t k, std::int64_t u, const Limits& limits = {});

/// h(k, r) against W at the repeat-free AP length k(k+1)/2 + 1, and against
/// the literal W(C(k,2), r) when that is computable.
struct ConsistencyReport {
  std::int64_t k = 0;
  int r = 0;
  RamseyResult hilbert;
  std::int64_t repeat_free_length = 0;  // k(k+1)/2 + 1
  RamseyResult vdw_repeat_free;
  std::int64_t literal_length = 0;      // C(k, 2)
  std::optional<RamseyResult> vdw_literal;
  /// "holds", "violated" or "inconclusive".
  std::string repeat_free_verdict;
  std::string literal_verdict;
};

ConsistencyReport consistency_h_le_w(std::int64_t k, int r, std::int64_t n_max_hilbert, std::int64_t n_max_vdw,
                                     const Limits& limits = {});

/// Line-oriented `kind,k,r,value` records; '#' lines are comments.
struct BaselineEntry {
  RamseyKind kind = RamseyKind::VanDerWaerden;
  std::int64_t k = 0;
  int r = 0;
  std::int64_t value = 0;

  bool operator==(const BaselineEntry&) const = default;
};

inline constexpr std::string_view kBaselineHeader = "# cubeforge baselines v1";

std::vector<BaselineEntry> parse_baselines(std::string_view text);
std::string format_baselines(const std::vector<BaselineEntry>& entries);
std::optional<std::int64_t> lookup_baseline(const std::vector<BaselineEntry>& entries, RamseyKind kind,
                                            std::int64_t k, int r);

}  // namespace cubeforge
