#include "cubeforge/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/sumset.hpp"

namespace cubeforge {

Coloring::Coloring(int r, std::vector<std::uint8_t> colors) : r_(r), colors_(std::move(colors)) {
  require(r_ >= 1 && r_ <= 255, ErrorKind::Domain, "number of colors must be in 1..255");
  for (auto c : colors_) require(c < r_, ErrorKind::Range, "color " + std::to_string(c) + " out of range");
}

std::string Coloring::digits() const {
  require(r_ <= 10, ErrorKind::Domain, "digit form needs at most 10 colors");
  std::string out;
  out.reserve(colors_.size());
  for (auto c : colors_) out.push_back(static_cast<char>('0' + c));
  return out;
}

Coloring product_coloring(const Coloring& c1, const Coloring& c2) {
  require(c1.n() == c2.n(), ErrorKind::Shape, "product of colorings with different n");
  require(c1.r() * c2.r() <= 255, ErrorKind::Domain, "product has too many colors");
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(c1.n()));
  for (std::size_t i = 0; i < colors.size(); ++i)
    colors[i] = static_cast<std::uint8_t>(c2.r() * c1.colors()[i] + c2.colors()[i]);
  return Coloring(c1.r() * c2.r(), std::move(colors));
}

bool is_monochromatic(const Coloring& c, std::span<const std::int64_t> positions) {
  if (positions.empty()) return true;
  const int first = c(positions.front());
  return std::all_of(positions.begin(), positions.end(), [&](std::int64_t p) { return c(p) == first; });
}

namespace {

/// Affine-cube search anchored at one position. Offsets are nonnegative
/// subset sums; offset o maps to anchor + direction·o.
class CubeSearch {
 public:
  CubeSearch(std::span<const std::uint8_t> colors, std::int64_t anchor, int direction, std::int64_t max_offset,
             int color, std::int64_t k, std::uint64_t cap, std::uint64_t& work, std::uint64_t budget)
      : colors_(colors), anchor_(anchor), direction_(direction), max_offset_(max_offset), color_(color), k_(k),
        cap_(cap), work_(work), budget_(budget) {}

  /// Fills `generators` with the lexicographically first A when one exists.
  bool run(std::vector<std::int64_t>& generators) {
    chosen_.clear();
    const bool found = dfs({0}, 0, 0);
    if (found) generators = chosen_;
    return found;
  }

 private:
  bool colored(std::int64_t offset) const {
    const std::int64_t pos = anchor_ + direction_ * offset;
    return colors_[static_cast<std::size_t>(pos - 1)] == color_;
  }

  bool dfs(const std::vector<std::int64_t>& sums, std::int64_t total, std::int64_t last) {
    const auto depth = static_cast<std::int64_t>(chosen_.size());
    if (depth == k_) return true;
    const std::int64_t rem = k_ - depth;
    std::vector<std::int64_t> next;
    for (std::int64_t a = last + 1;; ++a) {
      // Cheapest completion uses a, a+1, ..., a+rem-1.
      if (total + rem * a + rem * (rem - 1) / 2 > max_offset_) break;
      if (++work_ > budget_) fail(ErrorKind::Timeout, "cube search exceeded node budget");
      if (!std::all_of(sums.begin(), sums.end(), [&](std::int64_t s) { return colored(s + a); })) continue;
      next.clear();
      next.reserve(sums.size() * 2);
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < sums.size() || j < sums.size()) {
        const std::int64_t v = (j == sums.size() || (i < sums.size() && sums[i] <= sums[j] + a)) ? sums[i++]
                                                                                                 : sums[j++] + a;
        if (next.empty() || next.back() != v) next.push_back(v);
      }
      if (next.size() > cap_) continue;
      chosen_.push_back(a);
      if (dfs(next, total + a, a)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  std::span<const std::uint8_t> colors_;
  std::int64_t anchor_;
  int direction_;
  std::int64_t max_offset_;
  int color_;
  std::int64_t k_;
  std::uint64_t cap_;
  std::uint64_t& work_;
  std::uint64_t budget_;
  std::vector<std::int64_t> chosen_;
};

}  // namespace

namespace detail {

bool ap_conflict(std::span<const std::uint8_t> colors, std::int64_t p, int c, std::int64_t k, std::uint64_t&) {
  if (k <= 1) return true;
  for (std::int64_t d = 1; p - (k - 1) * d >= 1; ++d) {
    bool all = true;
    for (std::int64_t j = 1; j < k && all; ++j) all = colors[static_cast<std::size_t>(p - j * d - 1)] == c;
    if (all) return true;
  }
  return false;
}

bool cube_conflict(std::span<const std::uint8_t> colors, std::int64_t p, int c, std::int64_t k,
                   std::uint64_t& work) {
  // A cube whose largest member is p has the form p - Σ*A.
  std::vector<std::int64_t> generators;
  CubeSearch search(colors, p, -1, p - 1, c, k, kUnboundedCap, work, std::numeric_limits<std::uint64_t>::max());
  return search.run(generators);
}

Backtracker::Backtracker(int r, std::int64_t k, ConflictCheck check, std::uint64_t node_budget,
                         std::vector<std::uint8_t> fixed_prefix)
    : r_(r), k_(k), check_(check), budget_(node_budget), floor_(fixed_prefix.size()),
      colors_(std::move(fixed_prefix)) {
  int mx = -1;
  for (auto c : colors_) {
    mx = std::max(mx, static_cast<int>(c));
    max_used_.push_back(mx);
  }
}

bool Backtracker::advance(std::int64_t target) {
  while (true) {
    if (exhausted_) return false;
    if (static_cast<std::int64_t>(colors_.size()) >= target) return true;
    const auto p = static_cast<std::int64_t>(colors_.size()) + 1;
    const int prev_max = max_used_.empty() ? -1 : max_used_.back();
    const int limit = std::min(r_ - 1, prev_max + 1);
    bool placed = false;
    for (int c = resume_from_; c <= limit; ++c) {
      if (++nodes_ + work_ > budget_) fail(ErrorKind::Timeout, "coloring search exceeded node budget");
      if (!check_(colors_, p, c, k_, work_)) {
        colors_.push_back(static_cast<std::uint8_t>(c));
        max_used_.push_back(std::max(prev_max, c));
        resume_from_ = 0;
        placed = true;
        break;
      }
    }
    if (!placed) skip_current();
  }
}

void Backtracker::skip_current() {
  if (colors_.size() <= floor_) {
    exhausted_ = true;
    return;
  }
  resume_from_ = colors_.back() + 1;
  colors_.pop_back();
  max_used_.pop_back();
}

std::optional<Coloring> search_coloring(std::int64_t n, std::int64_t k, int r, ConflictCheck check,
                                        const Limits& limits, SearchStats* stats) {
  require(n >= 0, ErrorKind::Domain, "n must be non-negative");
  require(r >= 1, ErrorKind::Domain, "r must be at least 1");
  const unsigned threads = std::max(1U, limits.threads);
  // Split depth: enough prefixes to keep every worker busy.
  const std::int64_t split = std::min<std::int64_t>(n - 1, 10);
  if (threads == 1 || split < 2) {
    Backtracker bt(r, k, check, limits.node_budget);
    const bool ok = bt.advance(n);
    if (stats) stats->nodes = bt.nodes();
    if (!ok) return std::nullopt;
    return Coloring(r, bt.colors());
  }

  // Enumerate conflict-free prefixes of length `split` in search order,
  // recording how many decisions the sequential search spends before each.
  struct Prefix {
    std::vector<std::uint8_t> colors;
    std::uint64_t nodes_before = 0;
  };
  std::vector<Prefix> prefixes;
  Backtracker top(r, k, check, limits.node_budget);
  while (top.advance(split)) {
    prefixes.push_back({top.colors(), top.nodes()});
    top.skip_current();
  }
  const std::uint64_t prefix_nodes = top.nodes();

  std::vector<std::uint64_t> sub_nodes(prefixes.size(), 0);
  std::vector<std::optional<std::vector<std::uint8_t>>> found(prefixes.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{prefixes.size()};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= prefixes.size() || i > best.load()) return;
        Backtracker bt(r, k, check, limits.node_budget, prefixes[i].colors);
        const bool ok = bt.advance(n);
        sub_nodes[i] = bt.nodes();
        if (ok) {
          found[i] = bt.colors();
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  const std::size_t winner = best.load();
  std::uint64_t nodes = 0;
  if (winner < prefixes.size()) {
    nodes = prefixes[winner].nodes_before;
    for (std::size_t i = 0; i <= winner; ++i) nodes += sub_nodes[i];
  } else {
    nodes = prefix_nodes;
    for (auto s : sub_nodes) nodes += s;
  }
  if (nodes > limits.node_budget) fail(ErrorKind::Timeout, "coloring search exceeded node budget");
  if (stats) stats->nodes = nodes;
  if (winner == prefixes.size()) return std::nullopt;
  return Coloring(r, *found[winner]);
}

}  // namespace detail

std::optional<Coloring> find_ap_free_coloring(std::int64_t n, std::int64_t k, int r, const Limits& limits,
                                              SearchStats* stats) {
  require(n >= 1 && k >= 1, ErrorKind::Domain, "n and k must be at least 1");
  require(r >= 2, ErrorKind::Domain, "r must be at least 2");
  auto result = detail::search_coloring(n, k, r, detail::ap_conflict, limits, stats);
  if (result) ensure(!find_mono_ap(*result, k).has_value(), "AP-free coloring has no monochromatic AP");
  return result;
}

std::optional<ApWitness> find_mono_ap(const Coloring& c, std::int64_t k) {
  require(k >= 1, ErrorKind::Domain, "k must be at least 1");
  const std::int64_t n = c.n();
  if (n == 0) return std::nullopt;
  if (k == 1) return ApWitness{1, 1, 1};
  const auto colors = c.colors();
  std::vector<std::int64_t> run(static_cast<std::size_t>(n) + 1, 0);
  for (std::int64_t d = 1; (k - 1) * d < n; ++d) {
    // run[i]: same-colored terms ending at i along step d.
    for (std::int64_t i = 1; i <= n; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      run[idx] = (i > d && colors[idx - 1] == colors[idx - 1 - static_cast<std::size_t>(d)])
                     ? run[idx - static_cast<std::size_t>(d)] + 1
                     : 1;
      if (run[idx] >= k) return ApWitness{i - (k - 1) * d, d, k};
    }
  }
  return std::nullopt;
}

std::optional<CubeWitness> find_mono_cube(const Coloring& c, std::int64_t k, std::uint64_t sumset_cap,
                                          const Limits& limits, SearchStats* stats) {
  require(k >= 1, ErrorKind::Domain, "k must be at least 1");
  const std::int64_t n = c.n();
  std::uint64_t work = 0;
  std::optional<CubeWitness> out;
  for (std::int64_t x0 = 1; x0 <= n && !out; ++x0) {
    std::vector<std::int64_t> generators;
    CubeSearch search(c.colors(), x0, +1, n - x0, c(x0), k, sumset_cap, work, limits.node_budget);
    if (search.run(generators)) {
      CubeWitness w;
      w.x0 = x0;
      w.generators = IntSet(generators);
      w.realized = translate(restricted_sumset(w.generators), x0);
      w.color = c(x0);
      out = std::move(w);
    }
  }
  if (stats) stats->nodes = work;
  if (out) {
    ensure(out->realized.min() >= 1 && out->realized.max() <= n, "cube lies inside [1..n]");
    ensure(is_monochromatic(c, out->realized.elements()), "cube witness is monochromatic");
  }
  return out;
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Coloring random_coloring(std::int64_t n, int r, std::uint64_t seed) {
  require(n >= 0, ErrorKind::Domain, "n must be non-negative");
  require(r >= 2 && r <= 255, ErrorKind::Domain, "r must be in 2..255");
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < colors.size(); ++i) {
    const unsigned __int128 wide = static_cast<unsigned __int128>(splitmix64_at(seed, i)) * static_cast<unsigned>(r);
    colors[i] = static_cast<std::uint8_t>(wide >> 64);
  }
  return Coloring(r, std::move(colors));
}

namespace {

/// Smallest span a k-cube can have: A = {1, ..., k}.
bool cube_fits(std::int64_t n, std::int64_t k) { return k * (k + 1) / 2 < n; }

ProbabilityEstimate finish(std::uint64_t hits, std::uint64_t trials, bool exact) {
  ProbabilityEstimate e;
  e.hits = hits;
  e.trials = trials;
  e.exact = exact;
  e.probability = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
  e.standard_error = exact || trials == 0
                         ? 0.0
                         : std::sqrt(e.probability * (1.0 - e.probability) / static_cast<double>(trials));
  return e;
}

}  // namespace

ProbabilityEstimate estimate_mono_cube_probability(std::int64_t n, std::int64_t k, std::uint64_t trials,
                                                   std::uint64_t seed, const Limits& limits) {
  require(trials >= 1, ErrorKind::Domain, "trials must be at least 1");
  require(n >= 1 && k >= 1, ErrorKind::Domain, "n and k must be at least 1");
  if (!cube_fits(n, k)) return finish(0, trials, false);

  const unsigned threads = std::max(1U, limits.threads);
  std::vector<std::uint8_t> hit(trials, 0);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (std::uint64_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) {
        const Coloring c = random_coloring(n, 2, splitmix64_at(seed, t));
        hit[t] = find_mono_cube(c, k, kUnboundedCap, limits).has_value();
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(trials);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  const auto hits = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), 1));
  return finish(hits, trials, false);
}

ProbabilityEstimate exact_mono_cube_probability(std::int64_t n, std::int64_t k, const Limits& limits) {
  require(n >= 1 && n <= 24, ErrorKind::Budget, "exact enumeration needs 1 <= n <= 24");
  require(k >= 1, ErrorKind::Domain, "k must be at least 1");
  const std::uint64_t total = std::uint64_t{1} << n;
  if (!cube_fits(n, k)) return finish(0, total, true);
  std::uint64_t hits = 0;
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(n));
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::int64_t i = 0; i < n; ++i) colors[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
    if (find_mono_cube(Coloring(2, colors), k, kUnboundedCap, limits)) ++hits;
  }
  return finish(hits, total, true);
}

}  // namespace cubeforge
