#include "cubeforge/sidon.hpp"

#include <algorithm>
#include <limits>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/sumset.hpp"

namespace cubeforge {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

struct Candidate {
  std::int64_t b;
  std::int64_t a1;
  std::int64_t a2;
};

// Sums of two distinct elements; distinct from each other when A is Sidon.
std::vector<Candidate> pair_sums(const std::vector<std::int64_t>& pool) {
  std::vector<Candidate> out;
  out.reserve(pool.size() * (pool.size() - 1) / 2);
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j) out.push_back({checked_add(pool[i], pool[j]), pool[i], pool[j]});
  std::sort(out.begin(), out.end(), [](const Candidate& l, const Candidate& r) { return l.b < r.b; });
  return out;
}

// X, the unused part of A, and Σ*X over [0, ΣX].
struct GrowthState {
  std::int64_t n = 0;
  std::vector<std::int64_t> x;
  std::vector<std::int64_t> unused;
  OffsetBitset sums;
  std::int64_t sums_size = 0;

  void add_pair(std::int64_t a1, std::int64_t a2, const Limits& limits) {
    OffsetBitset next = detail::allocate_window(0, checked_add(sums.hi(), checked_add(a1, a2)), limits);
    next.or_shifted(sums, 0);
    next.or_shifted(sums, a1);
    next.or_shifted(sums, a2);
    next.or_shifted(sums, a1 + a2);
    sums = std::move(next);
    sums_size = static_cast<std::int64_t>(sums.count());
    x.insert(std::upper_bound(x.begin(), x.end(), a1), a1);
    x.insert(std::upper_bound(x.begin(), x.end(), a2), a2);
    std::erase(unused, a1);
    std::erase(unused, a2);
  }
};

void check_sidon_input(const IntSet& a) {
  require(a.empty() || a.min() >= 0, ErrorKind::Precondition, "A must be nonnegative");
  require(is_sidon(a), ErrorKind::Precondition, "A must be a Sidon set");
}

GrowthState make_state(const IntSet& a, const IntSet& x, const Limits& limits) {
  check_sidon_input(a);
  require(x.is_subset_of(a), ErrorKind::Precondition, "X must be a subset of A");
  GrowthState st;
  st.n = static_cast<std::int64_t>(a.size());
  st.x = x.to_vector();
  for (const auto v : a)
    if (!x.contains(v)) st.unused.push_back(v);
  const IntSet sx = restricted_sumset(x, limits);
  st.sums = detail::allocate_window(0, sx.max(), limits);
  for (const auto v : sx) st.sums.set(v);
  st.sums_size = static_cast<std::int64_t>(sx.size());
  return st;
}

bool small_hypotheses(const GrowthState& st) {
  return static_cast<std::int64_t>(st.x.size()) <= st.n / 2 && st.sums_size <= binomial(st.n / 2, 2);
}

bool large_hypotheses(const GrowthState& st) {
  return static_cast<std::int64_t>(st.x.size()) <= 3 * st.n / 4 && st.sums_size >= binomial(st.n / 4, 2);
}

GrowthStep small_step(GrowthState& st, const Limits& limits) {
  require(static_cast<std::int64_t>(st.x.size()) <= st.n / 2, ErrorKind::Precondition, "small phase needs |X| <= |A|/2");
  require(st.sums_size <= binomial(st.n / 2, 2), ErrorKind::Precondition,
          "small phase needs |Σ*X| <= C(|A|/2, 2)");
  require(st.unused.size() >= 2, ErrorKind::Degenerate, "fewer than two unused elements");

  const auto cands = pair_sums(st.unused);
  ensure(static_cast<std::int64_t>(cands.size()) >= st.sums_size, "|B| >= |Σ*X| in the small phase");
  const Candidate* best = nullptr;
  std::int64_t best_overlap = std::numeric_limits<std::int64_t>::max();
  for (const auto& c : cands) {
    const auto overlap = static_cast<std::int64_t>(st.sums.count_and_shifted(st.sums, c.b));
    if (overlap < best_overlap) {
      best_overlap = overlap;
      best = &c;
    }
  }
  ensure(2 * best_overlap <= st.sums_size, "some b has overlap at most |Σ*X|/2");

  GrowthStep step;
  step.phase = GrowthPhase::Small;
  step.a1 = best->a1;
  step.a2 = best->a2;
  step.b = best->b;
  step.x_before = static_cast<std::int64_t>(st.x.size());
  step.sums_before = st.sums_size;
  step.candidates = static_cast<std::int64_t>(cands.size());
  step.score = best_overlap;
  st.add_pair(step.a1, step.a2, limits);
  step.x_after = static_cast<std::int64_t>(st.x.size());
  step.sums_after = st.sums_size;
  ensure(2 * step.sums_after >= 3 * step.sums_before, "small step grows Σ*X by a factor 3/2");
  return step;
}

GrowthStep large_step(GrowthState& st, const Limits& limits) {
  const std::int64_t quarter = st.n / 4;
  require(static_cast<std::int64_t>(st.x.size()) <= 3 * st.n / 4, ErrorKind::Precondition,
          "large phase needs |X| <= 3|A|/4");
  require(st.sums_size >= binomial(quarter, 2), ErrorKind::Precondition, "large phase needs |Σ*X| >= C(|A|/4, 2)");
  require(quarter >= 2 && static_cast<std::int64_t>(st.unused.size()) >= quarter, ErrorKind::Degenerate,
          "need at least max(2, |A|/4) unused elements");

  const std::vector<std::int64_t> pool(st.unused.begin(), st.unused.begin() + quarter);
  const auto cands = pair_sums(pool);
  const auto nb = static_cast<std::int64_t>(cands.size());
  ensure(nb == binomial(quarter, 2), "|B| = C(|A|/4, 2)");
  ensure(nb <= st.sums_size, "|B| <= |Σ*X| in the large phase");

  const std::vector<std::int64_t> all = st.sums.values();
  const std::vector<std::int64_t> top(all.end() - nb, all.end());
  const Candidate* best = nullptr;
  std::int64_t best_fresh = -1;
  std::int64_t total_fresh = 0;
  for (const auto& c : cands) {
    std::int64_t fresh = 0;
    for (const auto s : top)
      if (!st.sums.test(s + c.b)) ++fresh;
    total_fresh += fresh;
    if (fresh > best_fresh) {
      best_fresh = fresh;
      best = &c;
    }
  }
  ensure(2 * total_fresh > nb * nb, "more than |B|²/2 pairs (s, b) leave Σ*X");

  GrowthStep step;
  step.phase = GrowthPhase::Large;
  step.a1 = best->a1;
  step.a2 = best->a2;
  step.b = best->b;
  step.x_before = static_cast<std::int64_t>(st.x.size());
  step.sums_before = st.sums_size;
  step.candidates = nb;
  step.score = best_fresh;
  st.add_pair(step.a1, step.a2, limits);
  step.x_after = static_cast<std::int64_t>(st.x.size());
  step.sums_after = st.sums_size;
  ensure(step.sums_after - step.sums_before >= (binomial(quarter, 2) + 1) / 2,
         "large step gains at least C(|A|/4, 2)/2");
  return step;
}

}  // namespace

IntSet erdos_turan_sidon(std::int64_t p) {
  require(p <= 1'000'000, ErrorKind::Domain, "p must be at most 10^6");
  require(is_prime(p), ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < p; ++i) out.push_back(2 * p * i + (i * i) % p);
  return IntSet(std::move(out));
}

IntSet mian_chowla(std::int64_t k) {
  require(k >= 1, ErrorKind::Domain, "count must be at least 1");
  std::vector<std::int64_t> seq;
  std::vector<bool> used_sums;  // a + b for a <= b in seq
  for (std::int64_t c = 1; static_cast<std::int64_t>(seq.size()) < k; ++c) {
    if (used_sums.size() < static_cast<std::size_t>(2 * c + 1)) used_sums.resize(static_cast<std::size_t>(4 * c + 2));
    bool ok = !used_sums[static_cast<std::size_t>(2 * c)];
    for (std::size_t i = 0; ok && i < seq.size(); ++i) ok = !used_sums[static_cast<std::size_t>(seq[i] + c)];
    if (!ok) continue;
    for (const auto v : seq) used_sums[static_cast<std::size_t>(v + c)] = true;
    used_sums[static_cast<std::size_t>(2 * c)] = true;
    seq.push_back(c);
  }
  return IntSet(std::move(seq));
}

const char* phase_name(GrowthPhase phase) { return phase == GrowthPhase::Small ? "small" : "large"; }

GrowthResult grow_small_phase(const IntSet& a, const IntSet& x, const Limits& limits) {
  GrowthState st = make_state(a, x, limits);
  GrowthStep step = small_step(st, limits);
  return {IntSet(std::move(st.x)), step};
}

GrowthResult grow_large_phase(const IntSet& a, const IntSet& x, const Limits& limits) {
  GrowthState st = make_state(a, x, limits);
  GrowthStep step = large_step(st, limits);
  return {IntSet(std::move(st.x)), step};
}

GrowthTrace sidon_cubic_lowerbound(const IntSet& a, const Limits& limits) {
  check_sidon_input(a);
  require(a.size() >= 8, ErrorKind::Precondition, "need |A| >= 8");
  GrowthState st = make_state(a, IntSet{}, limits);
  GrowthTrace trace;
  trace.a_size = st.n;

  auto record = [&](GrowthStep step) {
    if (trace.steps.size() % 5 == 4) {
      const auto fresh = static_cast<std::int64_t>(restricted_sumset(IntSet(st.x), limits).size());
      ensure(fresh == st.sums_size, "incremental |Σ*X| matches recomputation");
      step.cross_checked = true;
    }
    ensure(step.sums_after > step.sums_before, "Σ*X grows every step");
    trace.steps.push_back(step);
  };

  while (small_hypotheses(st)) {
    record(small_step(st, limits));
    ++trace.small_steps;
  }
  trace.small_exit = st.sums_size > binomial(st.n / 2, 2) ? "sumset-cap" : "size-cap";

  while (large_hypotheses(st)) {
    record(large_step(st, limits));
    ++trace.large_steps;
  }

  trace.x = IntSet(st.x);
  ensure(trace.x.is_subset_of(a) && is_sidon(trace.x), "X is a Sidon subset of A");
  trace.final_sums = st.sums_size;
  const auto n = static_cast<double>(st.n);
  trace.c = static_cast<double>(trace.final_sums) / (n * n * n);
  return trace;
}

}  // namespace cubeforge
