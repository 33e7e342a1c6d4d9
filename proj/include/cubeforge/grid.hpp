#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cubeforge/int_set.hpp"
#include "cubeforge/limits.hpp"

namespace cubeforge {

inline constexpr int kMaxGridDim = 4;

/// Point of Z^d; coordinates past the set's dimension are zero.
using GridPoint = std::array<std::int64_t, kMaxGridDim>;

/// Finite subset of Z^d (1 <= d <= 4), optionally declared inside the box
/// [1, N_1] x ... x [1, N_d].
class GridSet {
 public:
  GridSet(int dim, std::vector<GridPoint> points, std::optional<std::vector<std::int64_t>> box = std::nullopt);

  /// Every point of the box [1, N_1] x ... x [1, N_d].
  static GridSet full_box(std::vector<std::int64_t> box);

  int dim() const noexcept { return dim_; }
  const std::vector<GridPoint>& points() const noexcept { return points_; }
  const std::optional<std::vector<std::int64_t>>& box() const noexcept { return box_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  bool contains(const GridPoint& p) const;

  /// Π N_i; ShapeError without a box.
  std::int64_t box_volume() const;
  /// |A| / Π N_i.
  double density() const;

  bool operator==(const GridSet& other) const noexcept {
    return dim_ == other.dim_ && points_ == other.points_;
  }

 private:
  int dim_;
  std::vector<GridPoint> points_;  // sorted, unique
  std::optional<std::vector<std::int64_t>> box_;
};

/// mΣ*A in Z^d: sums Σ c_a·a with 0 <= c_a <= m, coordinatewise.
GridSet grid_restricted_sumset(const GridSet& a, std::int64_t m = 1, const Limits& limits = {});

struct Stack {
  GridPoint base{};  // first d-1 coordinates
  std::vector<GridPoint> members;
  bool dense = false;
};

/// Partition of a box subset by its first d-1 coordinates. A stack is sparse
/// when |A_x| <= α·N_d/2 and dense otherwise. All thresholds are compared in
/// exact integer arithmetic.
struct StackDecomposition {
  int dim = 0;
  std::int64_t top_side = 0;     // N_d
  std::int64_t base_cells = 0;   // N_1 ... N_{d-1}
  std::int64_t total = 0;        // |A|
  double density = 0.0;          // α
  /// max(1, ceil(log2 1/α)); 0 for empty input.
  int s = 0;
  /// Number of dyadic classes needed to hold every dense stack:
  /// ceil(log2 1/α) + 1; 0 for empty input.
  int class_count = 0;
  std::vector<Stack> stacks;  // ordered by base
  std::int64_t dense_mass = 0;
};

/// ShapeError when d < 2 or no box is declared.
StackDecomposition stack_partition(const GridSet& a);

/// Dyadic class index of a dense stack of the given size: the i with
/// t_i < size <= 2 t_i, t_i = 2^(i-1) α N_d.
int dyadic_class_of(const StackDecomposition& s, std::int64_t stack_size);

struct DyadicSelection {
  int index = 0;                       // i
  double threshold = 0.0;              // t = 2^(i-1) α N_d
  std::vector<GridPoint> bases;        // X_t
  std::int64_t covered = 0;            // elements of A in stacks of X_t
  std::vector<std::int64_t> class_mass;  // covered mass per class
};

/// The class of maximum covered mass (ties to the smallest index).
/// EmptyError when there is no dense stack.
DyadicSelection dyadic_select(const StackDecomposition& s);

/// Replacement walk over B = {b_1 < ... < b_2k}: start from m·(b_1 + ... + b_k),
/// repeatedly move one unit of multiplicity from the largest usable b_i to
/// b_{i+1}, finish at m·(b_{k+1} + ... + b_2k). Returns the mk^2 + 1 sums.
std::vector<std::int64_t> index_walk_witness(const IntSet& b, std::int64_t m);

/// Box flattening (x_1, ..., x_d) -> (x_1, Σ_{i>=2} x_i Π_{2<=j<i} N_j) after
/// axes with N_i = 1 are dropped. RangeError when x lies outside the box.
std::pair<std::int64_t, std::int64_t> freiman_embed_box(std::span<const std::int64_t> x,
                                                       std::span<const std::int64_t> dims);

/// Image of a box subset under freiman_embed_box, as a 2-D grid set.
GridSet freiman_embed_set(const GridSet& a);

/// Measured |mΣ*A| against the dense-box lower bound shape. Descriptive only.
struct DenseGapReport {
  int dim = 0;
  std::int64_t set_size = 0;
  std::int64_t m = 1;
  std::int64_t sumset_size = 0;
  double density = 0.0;
  /// |mΣ*A| · L^(d²) / (|A|^(d+1) m^d) with L = log2(1/α), or 1 when α = 1.
  double ratio_log_density = 0.0;
  /// Same with L = log2 |A| (clamped to at least 1).
  double ratio_log_size = 0.0;
  /// d = 1 only: the exact chain bound m·C(|A|+1,2) + 1, attained by A = [n] and its ratio.
  std::optional<std::int64_t> exact_d1_bound;
  std::optional<double> exact_d1_ratio;
  /// d = 1 only: |mΣ*A| >= |A|² m / 2 (for |A| >= 2; vacuous otherwise).
  std::optional<bool> d1_quadratic_bound_holds;
};

DenseGapReport verify_dense_gap_bound(const GridSet& a, std::int64_t m = 1, const Limits& limits = {});

}  // namespace cubeforge
