#include "cubeforge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/sumset.hpp"

namespace cubeforge {

GridSet::GridSet(int dim, std::vector<GridPoint> points, std::optional<std::vector<std::int64_t>> box)
    : dim_(dim), points_(std::move(points)), box_(std::move(box)) {
  require(dim_ >= 1 && dim_ <= kMaxGridDim, ErrorKind::Shape, "grid dimension must be in 1..4");
  for (auto& p : points_)
    for (int i = dim_; i < kMaxGridDim; ++i) p[static_cast<std::size_t>(i)] = 0;
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  if (box_) {
    require(box_->size() == static_cast<std::size_t>(dim_), ErrorKind::Shape, "box needs one side per axis");
    for (auto side : *box_) require(side >= 1, ErrorKind::Shape, "box sides must be at least 1");
    for (const auto& p : points_)
      for (int i = 0; i < dim_; ++i) {
        const auto c = p[static_cast<std::size_t>(i)];
        require(c >= 1 && c <= (*box_)[static_cast<std::size_t>(i)], ErrorKind::Range,
                "point outside declared box on axis " + std::to_string(i + 1));
      }
  }
}

GridSet GridSet::full_box(std::vector<std::int64_t> box) {
  const int dim = static_cast<int>(box.size());
  require(dim >= 1 && dim <= kMaxGridDim, ErrorKind::Shape, "grid dimension must be in 1..4");
  std::vector<GridPoint> pts;
  GridPoint p{};
  for (int i = 0; i < dim; ++i) p[static_cast<std::size_t>(i)] = 1;
  while (true) {
    pts.push_back(p);
    int axis = 0;
    while (axis < dim && p[static_cast<std::size_t>(axis)] == box[static_cast<std::size_t>(axis)]) {
      p[static_cast<std::size_t>(axis)] = 1;
      ++axis;
    }
    if (axis == dim) break;
    ++p[static_cast<std::size_t>(axis)];
  }
  return GridSet(dim, std::move(pts), std::move(box));
}

bool GridSet::contains(const GridPoint& p) const {
  GridPoint q = p;
  for (int i = dim_; i < kMaxGridDim; ++i) q[static_cast<std::size_t>(i)] = 0;
  return std::binary_search(points_.begin(), points_.end(), q);
}

std::int64_t GridSet::box_volume() const {
  require(box_.has_value(), ErrorKind::Shape, "no box declared");
  std::int64_t v = 1;
  for (auto side : *box_) v = checked_mul(v, side);
  return v;
}

double GridSet::density() const {
  return static_cast<double>(points_.size()) / static_cast<double>(box_volume());
}

GridSet grid_restricted_sumset(const GridSet& a, std::int64_t m, const Limits& limits) {
  require(m >= 1, ErrorKind::Range, "m must be at least 1");
  const auto d = static_cast<std::size_t>(a.dim());

  // Per-axis window of every reachable sum, then a mixed-radix flattening
  // that is injective on that window. Set bits only ever mark reachable sums,
  // so shifting by the flattened offset never wraps between rows.
  std::array<std::int64_t, kMaxGridDim> lo{};
  std::array<std::int64_t, kMaxGridDim> width{};
  std::array<std::int64_t, kMaxGridDim> stride{};
  for (std::size_t i = 0; i < d; ++i) {
    std::int64_t low = 0;
    std::int64_t high = 0;
    for (const auto& p : a.points()) {
      const std::int64_t scaled = checked_mul(p[i], m);
      if (scaled < 0) low = checked_add(low, scaled);
      else high = checked_add(high, scaled);
    }
    lo[i] = low;
    width[i] = checked_add(checked_sub(high, low), 1);
  }
  std::int64_t cells = 1;
  for (std::size_t i = 0; i < d; ++i) {
    stride[i] = cells;
    cells = checked_mul(cells, width[i]);
  }
  if (static_cast<std::uint64_t>(cells) > limits.window_cells)
    fail(ErrorKind::Cap, "grid DP window of " + std::to_string(cells) + " cells exceeds cap");

  std::vector<std::int64_t> flat;
  flat.reserve(a.size());
  for (const auto& p : a.points()) {
    std::int64_t f = 0;
    for (std::size_t i = 0; i < d; ++i) f = checked_add(f, checked_mul(p[i], stride[i]));
    flat.push_back(f);
  }
  const OffsetBitset bits = detail::bounded_multiplicity_sums(flat, m, limits);

  std::int64_t origin = 0;
  for (std::size_t i = 0; i < d; ++i) origin = checked_add(origin, checked_mul(lo[i], stride[i]));
  std::vector<GridPoint> sums;
  sums.reserve(bits.count());
  bits.for_each([&](std::int64_t value) {
    std::int64_t rel = value - origin;
    GridPoint p{};
    for (std::size_t i = 0; i < d; ++i) {
      p[i] = rel % width[i] + lo[i];
      rel /= width[i];
    }
    sums.push_back(p);
  });
  return GridSet(a.dim(), std::move(sums));
}

StackDecomposition stack_partition(const GridSet& a) {
  require(a.dim() >= 2, ErrorKind::Shape, "stacks need dimension at least 2");
  require(a.box().has_value(), ErrorKind::Shape, "stacks need a declared box");
  const auto& box = *a.box();
  const auto d = static_cast<std::size_t>(a.dim());

  StackDecomposition out;
  out.dim = a.dim();
  out.top_side = box[d - 1];
  out.base_cells = 1;
  for (std::size_t i = 0; i + 1 < d; ++i) out.base_cells = checked_mul(out.base_cells, box[i]);
  out.total = static_cast<std::int64_t>(a.size());
  if (a.empty()) return out;

  const std::int64_t volume = a.box_volume();
  out.density = static_cast<double>(out.total) / static_cast<double>(volume);
  // e = ceil(log2(volume / |A|)): the least e with 2^e |A| >= volume.
  int e = 0;
  while ((static_cast<__int128>(out.total) << e) < volume) ++e;
  out.s = std::max(1, e);
  out.class_count = e + 1;

  std::map<GridPoint, std::vector<GridPoint>> by_base;
  for (const auto& p : a.points()) {
    GridPoint base = p;
    base[d - 1] = 0;
    by_base[base].push_back(p);
  }
  for (auto& [base, members] : by_base) {
    Stack stack;
    stack.base = base;
    stack.members = std::move(members);
    // dense iff |A_x| > α N_d / 2  <=>  2 |A_x| N_1...N_{d-1} > |A|
    const auto size = static_cast<std::int64_t>(stack.members.size());
    stack.dense = 2 * size * out.base_cells > out.total;
    if (stack.dense) out.dense_mass += size;
    out.stacks.push_back(std::move(stack));
  }
  ensure(2 * out.dense_mass >= out.total, "dense stacks hold at least half of A");
  return out;
}

int dyadic_class_of(const StackDecomposition& s, std::int64_t stack_size) {
  // t_i < z <= 2 t_i  <=>  2^i |A| < 2 z P <= 2^(i+1) |A|, with P = N_1...N_{d-1}.
  const __int128 scaled = static_cast<__int128>(2) * stack_size * s.base_cells;
  require(scaled > s.total, ErrorKind::Domain, "stack is not dense");
  int i = 0;
  while (scaled > (static_cast<__int128>(s.total) << (i + 1))) ++i;
  return i;
}

DyadicSelection dyadic_select(const StackDecomposition& s) {
  require(s.dense_mass > 0, ErrorKind::Empty, "no dense stack");
  DyadicSelection out;
  out.class_mass.assign(static_cast<std::size_t>(s.class_count), 0);
  std::vector<int> class_of(s.stacks.size(), -1);
  for (std::size_t j = 0; j < s.stacks.size(); ++j) {
    if (!s.stacks[j].dense) continue;
    const int cls = dyadic_class_of(s, static_cast<std::int64_t>(s.stacks[j].members.size()));
    ensure(cls < s.class_count, "every dense stack falls in a dyadic class");
    class_of[j] = cls;
    out.class_mass[static_cast<std::size_t>(cls)] += static_cast<std::int64_t>(s.stacks[j].members.size());
  }
  const auto best = std::max_element(out.class_mass.begin(), out.class_mass.end());
  out.index = static_cast<int>(best - out.class_mass.begin());
  out.covered = *best;
  out.threshold = std::ldexp(static_cast<double>(s.total) / static_cast<double>(s.base_cells), out.index - 1);
  for (std::size_t j = 0; j < s.stacks.size(); ++j)
    if (class_of[j] == out.index) out.bases.push_back(s.stacks[j].base);
  ensure(2 * static_cast<std::int64_t>(s.class_count) * out.covered >= s.total,
         "selected dyadic class covers |A| / (2 * class count)");
  return out;
}

std::vector<std::int64_t> index_walk_witness(const IntSet& b, std::int64_t m) {
  require(b.size() % 2 == 0 && !b.empty(), ErrorKind::Shape, "index walk needs an even, nonempty set");
  require(m >= 1, ErrorKind::Range, "m must be at least 1");
  require(b.min() > 0, ErrorKind::Domain, "index walk needs positive elements");
  const auto elems = b.elements();
  const std::size_t two_k = elems.size();
  const std::size_t k = two_k / 2;

  std::vector<std::int64_t> mult(two_k, 0);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    mult[i] = m;
    sum = checked_add(sum, checked_mul(m, elems[i]));
  }
  std::vector<std::int64_t> walk{sum};
  while (true) {
    // Largest i < 2k with b_i in use and b_{i+1} below multiplicity m.
    std::size_t i = two_k - 1;
    bool moved = false;
    while (i-- > 0) {
      if (mult[i] > 0 && mult[i + 1] < m) {
        --mult[i];
        ++mult[i + 1];
        sum = checked_add(sum, elems[i + 1] - elems[i]);
        walk.push_back(sum);
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return walk;
}

std::pair<std::int64_t, std::int64_t> freiman_embed_box(std::span<const std::int64_t> x,
                                                       std::span<const std::int64_t> dims) {
  require(x.size() == dims.size() && !dims.empty(), ErrorKind::Shape, "point and box dimensions differ");
  std::vector<std::int64_t> coords;
  std::vector<std::int64_t> sides;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    require(dims[i] >= 1, ErrorKind::Shape, "box sides must be at least 1");
    require(x[i] >= 1 && x[i] <= dims[i], ErrorKind::Range,
            "coordinate " + std::to_string(x[i]) + " outside [1, " + std::to_string(dims[i]) + "]");
    if (dims[i] == 1 && dims.size() > 2) continue;
    coords.push_back(x[i]);
    sides.push_back(dims[i]);
  }
  if (coords.empty()) return {1, 0};
  std::int64_t second = 0;
  std::int64_t weight = 1;
  for (std::size_t i = 1; i < coords.size(); ++i) {
    second = checked_add(second, checked_mul(coords[i], weight));
    weight = checked_mul(weight, sides[i]);
  }
  return {coords[0], second};
}

GridSet freiman_embed_set(const GridSet& a) {
  require(a.box().has_value(), ErrorKind::Shape, "embedding needs a declared box");
  const auto& box = *a.box();
  const auto d = static_cast<std::size_t>(a.dim());
  std::vector<GridPoint> image;
  image.reserve(a.size());
  for (const auto& p : a.points()) {
    const auto [first, second] = freiman_embed_box(std::span<const std::int64_t>(p.data(), d), box);
    image.push_back(GridPoint{first, second, 0, 0});
  }
  return GridSet(2, std::move(image));
}

DenseGapReport verify_dense_gap_bound(const GridSet& a, std::int64_t m, const Limits& limits) {
  require(!a.empty(), ErrorKind::Empty, "bound check needs a nonempty set");
  require(a.box().has_value(), ErrorKind::Shape, "bound check needs a declared box");
  DenseGapReport r;
  r.dim = a.dim();
  r.set_size = static_cast<std::int64_t>(a.size());
  r.m = m;
  r.sumset_size = static_cast<std::int64_t>(grid_restricted_sumset(a, m, limits).size());
  r.density = a.density();

  const double d = r.dim;
  const double size = static_cast<double>(r.set_size);
  const double denom = std::pow(size, d + 1) * std::pow(static_cast<double>(m), d);
  const bool full = r.set_size == a.box_volume();
  const double log_density = full ? 1.0 : std::log2(1.0 / r.density);
  const double log_size = std::max(1.0, std::log2(size));
  r.ratio_log_density = static_cast<double>(r.sumset_size) * std::pow(log_density, d * d) / denom;
  r.ratio_log_size = static_cast<double>(r.sumset_size) * std::pow(log_size, d * d) / denom;

  if (r.dim == 1) {
    const std::int64_t bound = checked_add(checked_mul(m, binomial(r.set_size + 1, 2)), 1);
    r.exact_d1_bound = bound;
    r.exact_d1_ratio = static_cast<double>(r.sumset_size) / static_cast<double>(bound);
    // |mΣ*A| >= |A|² m / 2, compared as 2|mΣ*A| >= |A|² m
    r.d1_quadratic_bound_holds =
        r.set_size < 2 || 2 * static_cast<__int128>(r.sumset_size) >=
                              static_cast<__int128>(r.set_size) * r.set_size * m;
  }
  return r;
}

}  // namespace cubeforge
