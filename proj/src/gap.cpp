#include "cubeforge/gap.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"

namespace cubeforge {

Gap::Gap(std::int64_t base, std::vector<std::int64_t> differences, std::vector<AxisRange> ranges)
    : base_(base), differences_(std::move(differences)), ranges_(std::move(ranges)) {
  require(!differences_.empty(), ErrorKind::Shape, "GAP rank must be at least 1");
  require(differences_.size() <= kMaxGapRank, ErrorKind::Shape, "GAP rank above 4 is not supported");
  require(differences_.size() == ranges_.size(), ErrorKind::Shape, "one range per difference required");
  for (auto d : differences_) require(d != 0, ErrorKind::Shape, "GAP differences must be nonzero");
  for (const auto& r : ranges_)
    require(r.lower < r.upper, ErrorKind::Shape,
            "empty range (" + std::to_string(r.lower) + ", " + std::to_string(r.upper) + "]");
}

Gap Gap::centered_rank2(std::int64_t base, std::int64_t d1, std::int64_t d2, std::int64_t m, std::int64_t n) {
  return Gap(base, {d1, d2}, {{-m - 1, m}, {-n - 1, n}});
}

std::int64_t Gap::volume() const {
  std::int64_t v = 1;
  for (const auto& r : ranges_) v = checked_mul(v, checked_sub(r.upper, r.lower));
  return v;
}

bool Gap::is_symmetric() const noexcept {
  for (const auto& r : ranges_)
    if (r.lower != -r.upper) return false;
  return true;
}

bool Gap::is_centered() const noexcept {
  for (const auto& r : ranges_)
    if (r.lower != -r.upper - 1) return false;
  return true;
}

Gap Gap::translated(std::int64_t shift) const {
  return Gap(checked_add(base_, shift), differences_, ranges_);
}

IntSet enumerate_gap(const Gap& q, const Limits& limits) {
  const std::int64_t volume = q.volume();
  if (static_cast<std::uint64_t>(volume) > limits.enumeration_cap)
    fail(ErrorKind::Cap, "GAP volume " + std::to_string(volume) + " exceeds enumeration cap");

  const auto& ranges = q.ranges();
  const auto& diffs = q.differences();
  const std::size_t rank = q.rank();
  std::vector<std::int64_t> index(rank);
  std::int64_t value = q.base();
  for (std::size_t i = 0; i < rank; ++i) {
    index[i] = ranges[i].lower + 1;
    value = checked_add(value, checked_mul(index[i], diffs[i]));
  }

  std::vector<std::int64_t> values;
  values.reserve(static_cast<std::size_t>(volume));
  while (true) {
    values.push_back(value);
    std::size_t axis = 0;
    while (axis < rank && index[axis] == ranges[axis].upper) {
      value = checked_sub(value, checked_mul(index[axis] - (ranges[axis].lower + 1), diffs[axis]));
      index[axis] = ranges[axis].lower + 1;
      ++axis;
    }
    if (axis == rank) break;
    ++index[axis];
    value = checked_add(value, diffs[axis]);
  }
  return IntSet(std::move(values));
}

bool is_proper(const Gap& q, const Limits& limits) {
  return static_cast<std::int64_t>(enumerate_gap(q, limits).size()) == q.volume();
}

namespace {

void require_centered_rank2(const Gap& q) {
  require(q.rank() == 2, ErrorKind::Shape, "rank-2 GAP required");
  require(q.is_centered(), ErrorKind::Shape, "GAP must range over [-m, m] x [-n, n]");
  require(q.ranges()[0].upper >= 1 && q.ranges()[1].upper >= 1, ErrorKind::Shape, "m and n must be at least 1");
}

void require_rank2_shape(const Gap& q, const Limits& limits) {
  require_centered_rank2(q);
  require(is_proper(q, limits), ErrorKind::Shape, "GAP must be proper");
}

}  // namespace

Rank2Decomposition decompose_rank2(const Gap& q, const Limits& limits) {
  require_rank2_shape(q, limits);
  Rank2Decomposition out;
  out.m = q.ranges()[0].upper;
  out.n = q.ranges()[1].upper;
  const std::int64_t d1 = q.differences()[0];
  const std::int64_t d2 = q.differences()[1];

  std::array<std::vector<std::int64_t>, 6> values;
  for (std::int64_t i = -out.m; i <= out.m; ++i) {
    for (std::int64_t j = -out.n; j <= out.n; ++j) {
      std::size_t part = 0;
      if (j == 0) part = 4;
      else if (i == 0) part = 5;
      else if (i > 0) part = j > 0 ? 0 : 1;
      else part = j > 0 ? 2 : 3;
      values[part].push_back(checked_add(checked_mul(i, d1), checked_mul(j, d2)));
      out.preimages[part].emplace_back(i, j);
    }
  }
  for (std::size_t p = 0; p < 6; ++p) out.parts[p] = IntSet(std::move(values[p]));
  return out;
}

std::optional<CollisionWitness> find_collision(std::int64_t d1, std::int64_t d2, std::int64_t m, std::int64_t n,
                                               std::int64_t k) {
  require(d1 != 0 && d2 != 0, ErrorKind::Domain, "differences must be nonzero");
  require(m >= 1 && n >= 1 && k >= 1, ErrorKind::Domain, "search bounds must be positive");
  const std::int64_t bound1 = checked_mul(k, m);
  const std::int64_t bound2 = checked_mul(k, n);
  const std::int64_t g = std::gcd(d1, d2);

  // d1(x1 - y1) = d2(y2 - x2) forces (x1 - y1, y2 - x2) = t(d2, d1)/g. The
  // coordinate sum is smallest for t = ±1 with the lower member of each pair
  // at 1, so the first witness in search order is one of those two.
  std::optional<CollisionWitness> best;
  for (std::int64_t t : {std::int64_t{1}, std::int64_t{-1}}) {
    const std::int64_t delta1 = t * (d2 / g);  // x1 - y1
    const std::int64_t delta2 = t * (d1 / g);  // y2 - x2
    if (std::llabs(delta1) > bound1 - 1 || std::llabs(delta2) > bound2 - 1) continue;
    CollisionWitness w;
    w.y1 = delta1 >= 0 ? 1 : 1 - delta1;
    w.x1 = w.y1 + delta1;
    w.x2 = delta2 >= 0 ? 1 : 1 - delta2;
    w.y2 = w.x2 + delta2;
    auto key = [](const CollisionWitness& c) {
      return std::array<std::int64_t, 4>{c.x1 + c.x2 + c.y1 + c.y2, c.x1, c.x2, c.y1};
    };
    if (!best || key(w) < key(*best)) best = w;
  }
  return best;
}

ApWitness containing_ap(const Gap& q) {
  // R covers every value whether or not q is proper.
  require_centered_rank2(q);
  const std::int64_t m = q.ranges()[0].upper;
  const std::int64_t n = q.ranges()[1].upper;
  const std::int64_t d1 = q.differences()[0];
  const std::int64_t d2 = q.differences()[1];
  const std::int64_t reach = checked_add(checked_mul(m, std::llabs(d1)), checked_mul(n, std::llabs(d2)));
  const std::int64_t g = std::gcd(d1, d2);
  return ApWitness{checked_sub(q.base(), reach), g, 2 * (reach / g) + 1};
}

}  // namespace cubeforge
