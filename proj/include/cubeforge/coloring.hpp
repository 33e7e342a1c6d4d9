#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubeforge/int_set.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

/// Total map [1..n] -> {0..r-1}.
class Coloring {
 public:
  Coloring(int r, std::vector<std::uint8_t> colors);

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(colors_.size()); }
  int r() const noexcept { return r_; }
  /// Color of position i, 1-based.
  int operator()(std::int64_t i) const { return colors_.at(static_cast<std::size_t>(i - 1)); }
  std::span<const std::uint8_t> colors() const noexcept { return colors_; }

  /// One digit per position; r <= 10.
  std::string digits() const;

  bool operator==(const Coloring&) const = default;

 private:
  int r_;
  std::vector<std::uint8_t> colors_;
};

/// color(i) = r2·c1(i) + c2(i), with r1·r2 colors. ShapeError on mismatched n.
Coloring product_coloring(const Coloring& c1, const Coloring& c2);

/// True iff every position in `positions` (1-based) has the same color.
bool is_monochromatic(const Coloring& c, std::span<const std::int64_t> positions);

struct SearchStats {
  std::uint64_t nodes = 0;
};

/// Lexicographically first canonical r-coloring of [n] with no monochromatic
/// k-term AP, or nullopt when none exists. Canonical: position 1 gets color 0
/// and each position uses at most one color beyond those already used, so
/// every coloring is visited once up to renaming colors. TimeoutError when the
/// node budget runs out. Splits across limits.threads workers; the answer and
/// node count do not depend on the thread count.
std::optional<Coloring> find_ap_free_coloring(std::int64_t n, std::int64_t k, int r, const Limits& limits = {},
                                              SearchStats* stats = nullptr);

/// Monochromatic k-term AP inside [1..n] with the smallest difference, then the
/// smallest start.
std::optional<ApWitness> find_mono_ap(const Coloring& c, std::int64_t k);

/// x0 + Σ*A with A a set of k distinct positive integers.
struct CubeWitness {
  std::int64_t x0 = 0;
  IntSet generators;
  IntSet realized;
  int color = 0;
};

inline constexpr std::uint64_t kUnboundedCap = std::numeric_limits<std::uint64_t>::max();

/// Monochromatic affine k-cube inside [1..n], smallest x0 first, then the
/// lexicographically smallest A. Cubes with |Σ*A| > sumset_cap are skipped.
std::optional<CubeWitness> find_mono_cube(const Coloring& c, std::int64_t k,
                                          std::uint64_t sumset_cap = kUnboundedCap, const Limits& limits = {},
                                          SearchStats* stats = nullptr);

/// Name of the generator behind random_coloring, recorded in run manifests.
inline constexpr const char* kPrngId = "splitmix64/position-stream/lemire-range";

/// Seed used whenever the caller does not pick one.
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDC0BEF0A6E000ULL;

/// i-th output of the SplitMix64 stream seeded with `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) noexcept;

/// color(i) is the i-th SplitMix64 output from `seed`, mapped to [0, r) by a
/// 128-bit multiply-high.
Coloring random_coloring(std::int64_t n, int r, std::uint64_t seed);

struct ProbabilityEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  bool exact = false;
};

/// Fraction of seeded uniform 2-colorings of [n] with a monochromatic affine
/// k-cube. Trial t uses seed splitmix64_at(seed, t).
ProbabilityEstimate estimate_mono_cube_probability(std::int64_t n, std::int64_t k, std::uint64_t trials,
                                                   std::uint64_t seed, const Limits& limits = {});

/// Same quantity by enumerating all 2^n colorings (n <= 24).
ProbabilityEstimate exact_mono_cube_probability(std::int64_t n, std::int64_t k, const Limits& limits = {});

namespace detail {

/// Does coloring position p (1-based) with color c complete a monochromatic
/// structure whose other members all lie in colors[0..p-2]?
using ConflictCheck = bool (*)(std::span<const std::uint8_t> colors, std::int64_t p, int c, std::int64_t k,
                               std::uint64_t& work);

bool ap_conflict(std::span<const std::uint8_t> colors, std::int64_t p, int c, std::int64_t k,
                 std::uint64_t& work);
bool cube_conflict(std::span<const std::uint8_t> colors, std::int64_t p, int c, std::int64_t k,
                   std::uint64_t& work);

/// Depth-first search over canonical colorings in lexicographic order.
/// `advance(target)` resumes from the current state and stops at the first
/// coloring of [target] without conflicts; after a success it can be called
/// again with a larger target to extend that coloring.
class Backtracker {
 public:
  Backtracker(int r, std::int64_t k, ConflictCheck check, std::uint64_t node_budget,
              std::vector<std::uint8_t> fixed_prefix = {});

  bool advance(std::int64_t target);
  /// Leave the current leaf so the next advance() finds the following one.
  void skip_current();

  const std::vector<std::uint8_t>& colors() const noexcept { return colors_; }
  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  int r_;
  std::int64_t k_;
  ConflictCheck check_;
  std::uint64_t budget_;
  std::size_t floor_;
  std::vector<std::uint8_t> colors_;
  std::vector<int> max_used_;  // max_used_[j] = largest color among colors_[0..j]
  int resume_from_ = 0;
  bool exhausted_ = false;
  std::uint64_t nodes_ = 0;
  std::uint64_t work_ = 0;
};

/// Parallel-capable exhaustive search for one conflict-free coloring of [n].
std::optional<Coloring> search_coloring(std::int64_t n, std::int64_t k, int r, ConflictCheck check,
                                        const Limits& limits, SearchStats* stats);

}  // namespace detail

}  // namespace cubeforge
