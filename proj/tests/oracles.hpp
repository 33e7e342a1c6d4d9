#pragma once

// Brute-force reference implementations. They share no code with the library
// beyond plain value types, and favour obviousness over speed.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;

inline std::set<std::int64_t> subset_sums(const Vec& a) {
  std::set<std::int64_t> out;
  const std::uint64_t total = std::uint64_t{1} << a.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if ((mask >> i) & 1U) s += a[i];
    out.insert(s);
  }
  return out;
}

/// Same set grown one element at a time; usable for large |a| when the sums
/// stay in a modest range.
inline std::set<std::int64_t> subset_sums_incremental(const Vec& a) {
  std::set<std::int64_t> out{0};
  for (auto v : a) {
    std::set<std::int64_t> next = out;
    for (auto s : out) next.insert(s + v);
    out.swap(next);
  }
  return out;
}

inline std::set<std::int64_t> ell_fold(const Vec& a, std::size_t ell) {
  std::set<std::int64_t> out;
  const std::uint64_t total = std::uint64_t{1} << a.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != ell) continue;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if ((mask >> i) & 1U) s += a[i];
    out.insert(s);
  }
  return out;
}

/// Σ c_i a_i over every coefficient vector with 0 <= c_i <= m.
inline std::set<std::int64_t> bounded_sums(const Vec& a, std::int64_t m) {
  std::set<std::int64_t> out;
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t i, std::int64_t acc) {
    if (i == a.size()) {
      out.insert(acc);
      return;
    }
    for (std::int64_t c = 0; c <= m; ++c) go(i + 1, acc + c * a[i]);
  };
  go(0, 0);
  return out;
}

inline std::set<std::int64_t> add(const std::set<std::int64_t>& x, const std::set<std::int64_t>& y) {
  std::set<std::int64_t> out;
  for (auto u : x)
    for (auto v : y) out.insert(u + v);
  return out;
}

inline bool sidon(const Vec& a) {
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j)
      if (!seen.insert(a[i] + a[j]).second) return false;
  return true;
}

/// Length of the longest AP inside s.
inline std::int64_t longest_ap_length(const std::set<std::int64_t>& s) {
  if (s.empty()) return 0;
  std::int64_t best = 1;
  for (auto x : s)
    for (auto y : s) {
      if (y <= x) continue;
      std::int64_t len = 2;
      while (s.count(x + len * (y - x))) ++len;
      best = std::max(best, len);
    }
  return best;
}

using Colors = std::vector<int>;  // position i (1-based) has color c[i-1]

inline bool has_mono_ap(const Colors& c, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(c.size());
  if (k <= 1) return n >= 1;
  for (std::int64_t d = 1; (k - 1) * d < n; ++d)
    for (std::int64_t a = 1; a + (k - 1) * d <= n; ++a) {
      bool mono = true;
      for (std::int64_t j = 1; j < k && mono; ++j) mono = c[a - 1 + j * d] == c[a - 1];
      if (mono) return true;
    }
  return false;
}

/// Cube x0 + Σ*A with k distinct positive generators, inside [1, n].
inline bool has_mono_cube(const Colors& c, std::int64_t k) {
  const auto n = static_cast<std::int64_t>(c.size());
  std::vector<std::int64_t> gen;
  std::function<bool(std::int64_t, std::int64_t)> pick = [&](std::int64_t x0, std::int64_t from) -> bool {
    if (static_cast<std::int64_t>(gen.size()) == k) {
      std::set<std::int64_t> sums = subset_sums(gen);
      if (x0 + *sums.rbegin() > n) return false;
      for (auto s : sums)
        if (c[x0 + s - 1] != c[x0 - 1]) return false;
      return true;
    }
    for (std::int64_t a = from; x0 + a <= n; ++a) {
      gen.push_back(a);
      const bool hit = pick(x0, a + 1);
      gen.pop_back();
      if (hit) return true;
    }
    return false;
  };
  for (std::int64_t x0 = 1; x0 <= n; ++x0)
    if (pick(x0, 1)) return true;
  return false;
}

/// Calls f on every r-coloring of [n].
inline void each_coloring(std::int64_t n, int r, const std::function<void(const Colors&)>& f) {
  Colors c(static_cast<std::size_t>(n), 0);
  while (true) {
    f(c);
    std::size_t i = 0;
    while (i < c.size() && c[i] == r - 1) c[i++] = 0;
    if (i == c.size()) return;
    ++c[i];
  }
}

/// Does some r-coloring of [n] avoid the structure? Plain recursion without
/// symmetry breaking; `bad(prefix)` looks only at structures ending at the
/// last position.
inline bool extendable(std::int64_t n, int r, const std::function<bool(const Colors&)>& bad_at_end,
                       std::uint64_t* nodes = nullptr) {
  Colors c;
  std::function<bool()> go = [&]() -> bool {
    if (static_cast<std::int64_t>(c.size()) == n) return true;
    for (int col = 0; col < r; ++col) {
      c.push_back(col);
      if (nodes) ++*nodes;
      if (!bad_at_end(c) && go()) return true;
      c.pop_back();
    }
    return false;
  };
  return go();
}

inline bool mono_ap_ending_at_last(const Colors& c, std::int64_t k) {
  const auto p = static_cast<std::int64_t>(c.size());
  for (std::int64_t d = 1; (k - 1) * d < p; ++d) {
    bool mono = true;
    for (std::int64_t j = 1; j < k && mono; ++j) mono = c[p - 1 - j * d] == c[p - 1];
    if (mono) return true;
  }
  return false;
}

inline bool mono_cube_ending_at_last(const Colors& c, std::int64_t k) {
  // Any cube whose largest element is the last position.
  const auto p = static_cast<std::int64_t>(c.size());
  std::vector<std::int64_t> gen;
  std::function<bool(std::int64_t)> pick = [&](std::int64_t from) -> bool {
    if (static_cast<std::int64_t>(gen.size()) == k) {
      const std::int64_t total = std::accumulate(gen.begin(), gen.end(), std::int64_t{0});
      const std::int64_t x0 = p - total;
      if (x0 < 1) return false;
      for (auto s : subset_sums(gen))
        if (c[x0 + s - 1] != c[p - 1]) return false;
      return true;
    }
    for (std::int64_t a = from; a < p; ++a) {
      gen.push_back(a);
      const bool hit = pick(a + 1);
      gen.pop_back();
      if (hit) return true;
    }
    return false;
  };
  return pick(1);
}

/// Smallest n for which no r-coloring of [n] avoids the structure.
inline std::int64_t ramsey_number(int r, std::int64_t limit, const std::function<bool(const Colors&)>& bad_at_end) {
  for (std::int64_t n = 1; n <= limit; ++n)
    if (!extendable(n, r, bad_at_end)) return n;
  return -1;
}

using Point = std::vector<std::int64_t>;

inline std::set<Point> grid_subset_sums(const std::vector<Point>& a, std::size_t dim, std::int64_t m = 1) {
  std::set<Point> out;
  Point acc(dim, 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == a.size()) {
      out.insert(acc);
      return;
    }
    for (std::int64_t c = 0; c <= m; ++c) {
      for (std::size_t t = 0; t < dim; ++t) acc[t] += c * a[i][t];
      go(i + 1);
      for (std::size_t t = 0; t < dim; ++t) acc[t] -= c * a[i][t];
    }
  };
  go(0);
  return out;
}

struct Collision {
  std::int64_t x1, x2, y1, y2;
};

/// Every collision x1 d1 + x2 d2 = y1 d1 + y2 d2 inside the ranges.
inline std::vector<Collision> all_collisions(std::int64_t d1, std::int64_t d2, std::int64_t m, std::int64_t n,
                                             std::int64_t k) {
  std::vector<Collision> out;
  for (std::int64_t x1 = 1; x1 <= k * m; ++x1)
    for (std::int64_t x2 = 1; x2 <= k * n; ++x2)
      for (std::int64_t y1 = 1; y1 <= k * m; ++y1)
        for (std::int64_t y2 = 1; y2 <= k * n; ++y2)
          if ((x1 != y1 || x2 != y2) && x1 * d1 + x2 * d2 == y1 * d1 + y2 * d2) out.push_back({x1, x2, y1, y2});
  return out;
}

/// k-subsets S of [n] with at most u subset sums.
inline std::uint64_t census(std::int64_t n, std::int64_t k, std::int64_t u) {
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) != k) continue;
    Vec s;
    for (std::int64_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) s.push_back(i + 1);
    if (static_cast<std::int64_t>(subset_sums(s).size()) <= u) ++count;
  }
  return count;
}

}  // namespace oracle
