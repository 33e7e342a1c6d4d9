#include "cubeforge/sumset.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"

namespace cubeforge {
namespace detail {

OffsetBitset allocate_window(std::int64_t lo, std::int64_t hi, const Limits& limits) {
  const std::int64_t span = checked_sub(hi, lo);
  const auto cells = static_cast<std::uint64_t>(span) + 1;
  if (cells > limits.window_cells)
    fail(ErrorKind::Window, "DP window of " + std::to_string(cells) + " cells exceeds cap of " +
                                std::to_string(limits.window_cells));
  return OffsetBitset(lo, hi);
}

OffsetBitset bounded_multiplicity_sums(std::span<const std::int64_t> values, std::int64_t multiplicity,
                                       const Limits& limits) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (auto v : values) {
    const std::int64_t scaled = checked_mul(v, multiplicity);
    if (v < 0) lo = checked_add(lo, scaled);
    else hi = checked_add(hi, scaled);
  }
  OffsetBitset bits = allocate_window(lo, hi, limits);
  bits.set(0);

  // Smallest magnitudes first keeps the populated part of the window compact.
  std::vector<std::int64_t> order(values.begin(), values.end());
  std::stable_sort(order.begin(), order.end(),
                   [](std::int64_t x, std::int64_t y) { return std::llabs(x) < std::llabs(y); });
  for (auto v : order) {
    if (v == 0) continue;
    if (multiplicity == 1) {
      bits.or_shifted_self(v);
      continue;
    }
    const OffsetBitset before = bits;
    for (std::int64_t c = 1; c <= multiplicity; ++c) bits.or_shifted(before, c * v);
  }
  return bits;
}

}  // namespace detail

IntSet restricted_sumset(const IntSet& a, const Limits& limits) {
  return IntSet::from_bits(detail::bounded_multiplicity_sums(a.elements(), 1, limits));
}

IntSet ell_fold_sums(const IntSet& a, std::int64_t ell, const Limits& limits) {
  require(ell >= 0, ErrorKind::Range, "ell must be non-negative");
  require(static_cast<std::size_t>(ell) <= a.size(), ErrorKind::Range,
          "ell = " + std::to_string(ell) + " exceeds |A| = " + std::to_string(a.size()));
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  for (auto v : a) {
    if (v < 0) lo = checked_add(lo, v);
    else hi = checked_add(hi, v);
  }

  // layers[j] holds sums of exactly j distinct elements among those seen.
  std::vector<OffsetBitset> layers;
  layers.reserve(static_cast<std::size_t>(ell) + 1);
  for (std::int64_t j = 0; j <= ell; ++j) layers.push_back(detail::allocate_window(lo, hi, limits));
  layers[0].set(0);
  std::int64_t seen = 0;
  for (auto v : a) {
    ++seen;
    for (std::int64_t j = std::min(seen, ell); j >= 1; --j)
      layers[static_cast<std::size_t>(j)].or_shifted(layers[static_cast<std::size_t>(j - 1)], v);
  }
  return IntSet::from_bits(layers[static_cast<std::size_t>(ell)]);
}

IntSet sumset(const IntSet& x, const IntSet& y, const Limits& limits) {
  if (x.empty() || y.empty()) return {};
  detail::allocate_window(y.min(), y.max(), limits);
  const OffsetBitset ybits = y.bits();
  OffsetBitset out = detail::allocate_window(checked_add(x.min(), y.min()), checked_add(x.max(), y.max()), limits);
  for (auto v : x) out.or_shifted(ybits, v);
  return IntSet::from_bits(out);
}

IntSet m_fold_sumset(const IntSet& s, std::int64_t m, const Limits& limits) {
  require(m >= 1, ErrorKind::Range, "m must be at least 1");
  if (s.empty()) return {};
  IntSet acc = s;
  for (std::int64_t i = 1; i < m; ++i) acc = sumset(acc, s, limits);
  return acc;
}

IntSet m_fold_restricted_sumset(const IntSet& a, std::int64_t m, const Limits& limits) {
  require(m >= 1, ErrorKind::Range, "m must be at least 1");
  return IntSet::from_bits(detail::bounded_multiplicity_sums(a.elements(), m, limits));
}

std::vector<std::int64_t> chain_witness(const IntSet& a) {
  require(!a.empty(), ErrorKind::Domain, "chain witness needs a nonempty set");
  require(a.min() > 0, ErrorKind::Domain, "chain witness needs positive elements");
  const auto elems = a.elements();
  const std::size_t k = elems.size();
  std::vector<std::int64_t> chain;
  chain.reserve(k * (k + 1) / 2 + 1);
  chain.push_back(0);
  // Row j (j >= 1): a_i plus the j-1 largest elements, for i below them.
  std::int64_t top = 0;  // sum of the j-1 largest elements
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t free_count = k - (j - 1);
    for (std::size_t i = 0; i < free_count; ++i) chain.push_back(checked_add(elems[i], top));
    top = checked_add(top, elems[k - j]);
  }
  return chain;
}

ApWitness longest_ap_in(const IntSet& s) {
  require(!s.empty(), ErrorKind::Precondition, "longest AP of an empty set");
  ApWitness best{s.min(), 1, 1};
  if (s.size() == 1) return best;

  const auto elems = s.elements();
  const OffsetBitset member = s.bits();
  const std::int64_t top = s.max();
  const std::size_t n = elems.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::int64_t start = elems[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t diff = elems[j] - start;
      // Longest run possible from `start` with this or any larger difference.
      const std::int64_t reach = (top - start) / diff + 1;
      if (reach < best.length) break;
      if (member.test(start - diff)) continue;  // not the first term of its run
      std::int64_t length = 2;
      while (member.test(start + length * diff)) ++length;
      const bool better = length > best.length ||
                          (length == best.length &&
                           (diff < best.difference || (diff == best.difference && start < best.start)));
      if (better) best = {start, diff, length};
    }
  }
  return best;
}

bool is_sidon(const IntSet& a) {
  const auto elems = a.elements();
  std::vector<std::int64_t> sums;
  sums.reserve(elems.size() * (elems.size() + 1) / 2);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) sums.push_back(checked_add(elems[i], elems[j]));
  std::sort(sums.begin(), sums.end());
  return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
}

}  // namespace cubeforge
