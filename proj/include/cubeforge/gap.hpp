#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cubeforge/int_set.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

/// Half-open index range (lower, upper]: indices lower+1, ..., upper.
struct AxisRange {
  std::int64_t lower = 0;
  std::int64_t upper = 1;

  std::int64_t length() const noexcept { return upper - lower; }
  bool operator==(const AxisRange&) const = default;
};

inline constexpr std::size_t kMaxGapRank = 4;

/// Generalized arithmetic progression {base + Σ k_i d_i : lower_i < k_i <= upper_i}.
class Gap {
 public:
  Gap(std::int64_t base, std::vector<std::int64_t> differences, std::vector<AxisRange> ranges);

  /// Rank-2 GAP over the index box [-m, m] x [-n, n], i.e. ranges
  /// (-m-1, m] x (-n-1, n]. This is the shape the six-part decomposition and
  /// the containing AP operate on.
  static Gap centered_rank2(std::int64_t base, std::int64_t d1, std::int64_t d2, std::int64_t m, std::int64_t n);

  std::size_t rank() const noexcept { return differences_.size(); }
  std::int64_t base() const noexcept { return base_; }
  const std::vector<std::int64_t>& differences() const noexcept { return differences_; }
  const std::vector<AxisRange>& ranges() const noexcept { return ranges_; }

  /// Π (upper_i - lower_i), overflow-checked.
  std::int64_t volume() const;
  /// lower_i = -upper_i on every axis.
  bool is_symmetric() const noexcept;
  /// Index set on every axis is [-M, M], i.e. lower_i = -upper_i - 1.
  bool is_centered() const noexcept;

  Gap translated(std::int64_t shift) const;

 private:
  std::int64_t base_;
  std::vector<std::int64_t> differences_;
  std::vector<AxisRange> ranges_;
};

/// Realized values. CapError when the volume exceeds limits.enumeration_cap.
IntSet enumerate_gap(const Gap& q, const Limits& limits = {});

/// |enumerate_gap(q)| == volume(q).
bool is_proper(const Gap& q, const Limits& limits = {});

/// The six disjoint pieces of a centered proper rank-2 GAP, base removed:
///   0: i,j > 0    1: i > 0, j < 0    2: i < 0, j > 0    3: i,j < 0
///   4: j = 0 (the d1 axis, 0 included)    5: i = 0, j != 0
struct Rank2Decomposition {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::array<IntSet, 6> parts;
  std::array<std::vector<std::pair<std::int64_t, std::int64_t>>, 6> preimages;
};

/// ShapeError unless q is rank 2, centered and proper.
Rank2Decomposition decompose_rank2(const Gap& q, const Limits& limits = {});

/// x1·d1 + x2·d2 = y1·d1 + y2·d2 with (x1, x2) != (y1, y2),
/// 1 <= x1, y1 <= k·m and 1 <= x2, y2 <= k·n.
struct CollisionWitness {
  std::int64_t x1 = 0;
  std::int64_t x2 = 0;
  std::int64_t y1 = 0;
  std::int64_t y2 = 0;

  bool operator==(const CollisionWitness&) const = default;
};

/// First collision in the order (x1+x2+y1+y2, x1, x2, y1), or nullopt when
/// none exists inside the ranges.
std::optional<CollisionWitness> find_collision(std::int64_t d1, std::int64_t d2, std::int64_t m, std::int64_t n,
                                               std::int64_t k);

/// The AP with difference gcd(d1, d2) running from base - L to base + L,
/// L = m|d1| + n|d2|; it contains every value of q. Needs a centered rank-2
/// GAP; properness is not required.
ApWitness containing_ap(const Gap& q);

}  // namespace cubeforge
