// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// gating criterion fails. Values are checked against the brute-force oracles
// in oracles.hpp, never against the library itself.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "cubeforge/checked.hpp"
#include "cubeforge/coloring.hpp"
#include "cubeforge/gap.hpp"
#include "cubeforge/grid.hpp"
#include "cubeforge/ramsey.hpp"
#include "cubeforge/sidon.hpp"
#include "cubeforge/sumset.hpp"
#include "oracles.hpp"

#ifndef CUBEFORGE_TEST_DATA
#define CUBEFORGE_TEST_DATA "."
#endif

using namespace cubeforge;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int gating_failures = 0;

void report(const char* id, bool pass, const std::string& detail, bool gating = true) {
  std::printf("%s %-14s %s%s\n", pass ? "PASS" : "FAIL", id, gating ? "" : "[non-gating] ", detail.c_str());
  std::fflush(stdout);
  if (gating && !pass) ++gating_failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

oracle::Colors to_oracle(const Coloring& c) { return {c.colors().begin(), c.colors().end()}; }

std::vector<BaselineEntry> load_baselines() {
  std::ifstream in(std::string(CUBEFORGE_TEST_DATA) + "/baselines/ramsey_baselines.csv");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_baselines(ss.str());
}

std::vector<std::int64_t> random_positive(std::mt19937_64& rng, std::size_t size, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> v(1, hi);
  std::set<std::int64_t> pick;
  while (pick.size() < size) pick.insert(v(rng));
  return {pick.begin(), pick.end()};
}

bool ap_free(const oracle::Colors& c, std::int64_t k) { return !oracle::has_mono_ap(c, k); }

/// Two-sided check of a search result: the witness at value-1 is good and
/// the plain recursion finds no good coloring of [value].
bool certified(const RamseyResult& res, std::int64_t expect, bool cube) {
  if (!res.exact || res.value != expect || !res.witness || res.witness->n() != expect - 1) return false;
  const auto c = to_oracle(*res.witness);
  const bool good = cube ? !oracle::has_mono_cube(c, res.k) : ap_free(c, res.k);
  const auto k = res.k;
  const bool exhausted = !oracle::extendable(expect, res.r, [&](const oracle::Colors& p) {
    return cube ? oracle::mono_cube_ending_at_last(p, k) : oracle::mono_ap_ending_at_last(p, k);
  });
  return good && exhausted;
}

void vdw_criterion(const std::vector<BaselineEntry>& baselines) {
  bool pass = true;
  std::string detail;
  for (auto [k, expect] : {std::pair<std::int64_t, std::int64_t>{3, 9}, {4, 35}}) {
    const auto t0 = Clock::now();
    const auto res = vdw_number(k, 2, 60);
    const double secs = since(t0);
    const bool ok = certified(res, expect, false) && secs < 60.0 &&
                    lookup_baseline(baselines, RamseyKind::VanDerWaerden, k, 2) == res.value;
    pass = pass && ok;
    detail += fmt("W(%lld,2)=%lld in %.3fs (%llu+%llu nodes); ", static_cast<long long>(k),
                  static_cast<long long>(res.value), secs, static_cast<unsigned long long>(res.search_nodes),
                  static_cast<unsigned long long>(res.exhaustion_nodes));
  }
  report("vdw", pass, detail + "witness and exhaustion re-checked by plain recursion, baselines match");
}

void vdw_stretch() {
  const auto t0 = Clock::now();
  Limits limits;
  limits.threads = 4;
  const auto res = vdw_number(3, 3, 40, limits);
  const double secs = since(t0);
  const bool ok = res.exact && res.value == 27 && res.witness && ap_free(to_oracle(*res.witness), 3) && secs < 3600;
  report("vdw-stretch", ok, fmt("W(3,3)=%lld in %.3fs", static_cast<long long>(res.value), secs), false);
}

void hilbert_criterion(const std::vector<BaselineEntry>& baselines) {
  const auto h1 = hilbert_number(1, 2, 10);
  const auto h2 = hilbert_number(2, 2, 30);
  const auto rep = consistency_h_le_w(2, 2, 30, 60);
  const bool ok1 = certified(h1, 3, true);
  const bool ok2 = certified(h2, 11, true) && lookup_baseline(baselines, RamseyKind::Hilbert, 2, 2) == h2.value;
  const bool consistent = rep.vdw_repeat_free.exact && rep.vdw_repeat_free.value == 35 && h2.value <= 35;
  report("hilbert", ok1 && ok2 && consistent,
         fmt("h(1,2)=%lld, h(2,2)=%lld (baseline %s), h(2,2) <= W(4,2)=%lld %s", static_cast<long long>(h1.value),
             static_cast<long long>(h2.value), ok2 ? "matches" : "differs",
             static_cast<long long>(rep.vdw_repeat_free.value), consistent ? "holds" : "fails"));
}

void chain_criterion() {
  std::mt19937_64 rng(1001);
  std::uniform_int_distribution<std::size_t> size(0, 14);
  const auto t0 = Clock::now();
  std::uint64_t violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto a = random_positive(rng, size(rng), 1000);
    const IntSet got = restricted_sumset(IntSet(a));
    const auto expect = oracle::subset_sums(a);
    const auto n = static_cast<std::int64_t>(a.size());
    if (got.to_vector() != std::vector<std::int64_t>(expect.begin(), expect.end())) ++violations;
    if (static_cast<std::int64_t>(got.size()) < n * (n + 1) / 2 + 1) ++violations;
  }
  const double secs = since(t0);
  report("chain", violations == 0 && secs < 30.0,
         fmt("10000 sets, %llu violations, %.2fs", static_cast<unsigned long long>(violations), secs));
}

void mfold_criterion() {
  std::mt19937_64 rng(1002);
  std::uint64_t checks = 0, violations = 0, cross = 0;
  for (std::size_t n = 1; n <= 10; ++n)
    for (std::int64_t m = 1; m <= 5; ++m)
      for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_positive(rng, n, 200);
        const IntSet got = m_fold_restricted_sumset(IntSet(a), m);
        const auto nn = static_cast<std::int64_t>(n);
        ++checks;
        if (static_cast<std::int64_t>(got.size()) < m * nn * (nn + 1) / 2 - m + 1) ++violations;
        if (std::pow(m + 1.0, static_cast<double>(n)) <= 2e4) {
          ++cross;
          const auto expect = oracle::bounded_sums(a, m);
          if (got.to_vector() != std::vector<std::int64_t>(expect.begin(), expect.end())) ++violations;
        }
      }
  report("mfold", violations == 0,
         fmt("%llu sets (|A|<=10, m<=5), %llu also matched against coefficient enumeration, %llu violations",
             static_cast<unsigned long long>(checks), static_cast<unsigned long long>(cross),
             static_cast<unsigned long long>(violations)));
}

void census_criterion() {
  const auto t0 = Clock::now();
  const bool pinned = census_small_sumsets(10, 3, 6).count == 0 && census_small_sumsets(10, 3, 7).count == 20;
  std::uint64_t cases = 0, mismatches = 0, bound_failures = 0;
  for (std::int64_t n = 1; n <= 25; ++n)
    for (std::int64_t k = 1; k <= std::min<std::int64_t>(4, n); ++k) {
      // histogram of |Σ*S| over k-subsets of [n], by direct enumeration
      std::map<std::int64_t, std::uint64_t> hist;
      std::vector<std::int64_t> s;
      std::function<void(std::int64_t)> pick = [&](std::int64_t from) {
        if (static_cast<std::int64_t>(s.size()) == k) {
          ++hist[static_cast<std::int64_t>(oracle::subset_sums(s).size())];
          return;
        }
        for (std::int64_t v = from; v <= n; ++v) {
          s.push_back(v);
          pick(v + 1);
          s.pop_back();
        }
      };
      pick(1);
      for (std::int64_t u = k * (k + 1) / 2; u <= 40; ++u) {
        std::uint64_t expect = 0;
        for (auto [size, count] : hist)
          if (size <= u) expect += count;
        const auto res = census_small_sumsets(n, k, u);
        ++cases;
        if (res.count != expect) ++mismatches;
        const double log2_bound = std::log2(static_cast<double>(u)) * std::log2(static_cast<double>(k * n)) +
                                  2.0 * static_cast<double>(k) * std::log2(static_cast<double>(u));
        if (expect > 0 && std::log2(static_cast<double>(expect)) > log2_bound) ++bound_failures;
        if (!res.pass) ++bound_failures;
      }
    }
  report("census", pinned && mismatches == 0 && bound_failures == 0,
         fmt("(10,3,6)=0 and (10,3,7)=20 %s; %llu (n,k,u) cases, %llu count mismatches, %llu bound failures, %.2fs",
             pinned ? "reproduced" : "NOT reproduced", static_cast<unsigned long long>(cases),
             static_cast<unsigned long long>(mismatches), static_cast<unsigned long long>(bound_failures),
             since(t0)));
}

void gap_criterion() {
  std::mt19937_64 rng(1003);
  std::uniform_int_distribution<std::int64_t> diff(1, 50), side(1, 6), sign(0, 1), base(-100, 100);
  std::uint64_t violations = 0, collisions = 0;
  int tested = 0;
  while (tested < 1000) {
    const auto d1 = diff(rng) * (sign(rng) ? -1 : 1), d2 = diff(rng) * (sign(rng) ? -1 : 1);
    const auto m = side(rng), n = side(rng);
    const auto a0 = base(rng);
    std::set<std::int64_t> q;
    std::uint64_t volume = 0;
    for (std::int64_t i = -m; i <= m; ++i)
      for (std::int64_t j = -n; j <= n; ++j, ++volume) q.insert(a0 + i * d1 + j * d2);
    if (q.size() != volume) continue;  // not proper
    ++tested;
    const Gap gap = Gap::centered_rank2(a0, d1, d2, m, n);

    const auto dec = decompose_rank2(gap);
    std::multiset<std::int64_t> parts;
    for (const auto& p : dec.parts)
      for (auto v : p) parts.insert(a0 + v);
    if (parts.size() != q.size() || std::set<std::int64_t>(parts.begin(), parts.end()) != q) ++violations;

    const auto ap = containing_ap(gap);
    const auto g = std::gcd(d1, d2);
    for (auto v : q) {
      const auto off = v - ap.start;
      if (off < 0 || off % ap.difference != 0 || off / ap.difference >= ap.length) ++violations;
    }
    if (ap.length > 1 + 2 * (m * std::llabs(d1) + n * std::llabs(d2)) / g) ++violations;

    for (std::int64_t k = 1; k <= 6; ++k) {
      const auto w = find_collision(d1, d2, m, n, k);
      if (k <= 2 && w.has_value() != !oracle::all_collisions(d1, d2, m, n, k).empty()) ++violations;
      if (!w) continue;
      ++collisions;
      if ((w->x1 - w->y1) * d1 != (w->y2 - w->x2) * d2) ++violations;
      if (std::llabs(w->x2 - w->y2) % (std::llabs(d1) / g) != 0) ++violations;
      if (std::llabs(w->x1 - w->y1) % (std::llabs(d2) / g) != 0) ++violations;
    }
  }
  report("gap", violations == 0,
         fmt("1000 proper centered rank-2 GAPs, %llu collision witnesses checked, %llu violations",
             static_cast<unsigned long long>(collisions), static_cast<unsigned long long>(violations)));
}

void freiman_criterion() {
  std::mt19937_64 rng(1004);
  std::uint64_t boxes = 0, subsets = 0, injectivity = 0, size_mismatch = 0, image_larger = 0;
  std::string example;
  std::vector<std::vector<std::int64_t>> shapes;
  for (std::int64_t a = 1; a <= 3; ++a) {
    shapes.push_back({a});
    for (std::int64_t b = 1; b <= 3; ++b) {
      shapes.push_back({a, b});
      for (std::int64_t c = 1; c <= 3; ++c) shapes.push_back({a, b, c});
    }
  }
  for (const auto& dims : shapes) {
    ++boxes;
    const GridSet box = GridSet::full_box(dims);
    const auto d = dims.size();
    std::set<std::pair<std::int64_t, std::int64_t>> images;
    for (const auto& p : box.points()) images.insert(freiman_embed_box(std::span(p.data(), d), dims));
    if (images.size() != box.size()) ++injectivity;

    std::vector<GridPoint> pts = box.points();
    std::uniform_int_distribution<std::size_t> size(1, std::min<std::size_t>(6, pts.size()));
    for (int trial = 0; trial < 200; ++trial) {
      std::shuffle(pts.begin(), pts.end(), rng);
      const auto count = size(rng);
      std::vector<oracle::Point> a, image;
      for (std::size_t i = 0; i < count; ++i) {
        a.emplace_back(pts[i].begin(), pts[i].begin() + static_cast<std::ptrdiff_t>(d));
        const auto [u, v] = freiman_embed_box(std::span(pts[i].data(), d), dims);
        image.push_back({u, v});
      }
      ++subsets;
      const auto direct = oracle::grid_subset_sums(a, d).size();
      const auto embedded = oracle::grid_subset_sums(image, 2).size();
      if (embedded > direct) ++image_larger;
      if (direct != embedded) {
        if (example.empty()) {
          example = " e.g. box (";
          for (std::size_t i = 0; i < d; ++i) example += (i ? "," : "") + std::to_string(dims[i]);
          example += fmt(") |A|=%zu: %zu vs %zu", count, direct, embedded);
        }
        ++size_mismatch;
      }
    }
  }
  report("freiman", injectivity == 0 && size_mismatch == 0,
         fmt("%llu boxes, %llu subsets: %llu injectivity failures, %llu with |Σ*φ(A)| != |Σ*A|, "
             "%llu with |Σ*φ(A)| > |Σ*A|;",
             static_cast<unsigned long long>(boxes), static_cast<unsigned long long>(subsets),
             static_cast<unsigned long long>(injectivity), static_cast<unsigned long long>(size_mismatch),
             static_cast<unsigned long long>(image_larger)) +
             example);
}

const std::int64_t kPrimes[] = {11, 13, 17, 19, 23, 29, 31, 37, 41, 43};

void sidon_growth_criterion() {
  const auto t0 = Clock::now();
  std::uint64_t steps = 0, violations = 0;
  std::string cs;
  for (auto p : kPrimes) {
    const IntSet a = erdos_turan_sidon(p);
    const auto t = sidon_cubic_lowerbound(a);
    const std::int64_t q = p / 4;
    const std::int64_t gain = (q * (q - 1) / 2 + 1) / 2;
    for (const auto& s : t.steps) {
      ++steps;
      if (s.phase == GrowthPhase::Small ? 2 * s.sums_after < 3 * s.sums_before
                                        : s.sums_after - s.sums_before < gain)
        ++violations;
    }
    const auto final_sums = static_cast<std::int64_t>(oracle::subset_sums_incremental(t.x.to_vector()).size());
    if (final_sums != t.final_sums) ++violations;
    if (64 * final_sums < q * q * (p / 8)) ++violations;
    cs += fmt("%s%lld:%.4f", cs.empty() ? "" : " ", static_cast<long long>(p),
              static_cast<double>(final_sums) / static_cast<double>(p * p * p));
  }
  const double secs = since(t0);
  report("sidon-growth", violations == 0 && secs < 300,
         fmt("%llu steps over 10 primes, %llu violations, %.2fs; c = |Σ*X|/|A|^3 by p: ",
             static_cast<unsigned long long>(steps), static_cast<unsigned long long>(violations), secs) +
             cs);
}

void sidon_upper_criterion() {
  std::uint64_t violations = 0;
  for (auto p : kPrimes) {
    const IntSet a = erdos_turan_sidon(p);
    const IntSet sums = restricted_sumset(a);
    const auto n = static_cast<std::int64_t>(a.size());
    if (static_cast<std::int64_t>(sums.size()) > sums.max() + 1) ++violations;
    if (sums.max() + 1 > n * a.max() + 1) ++violations;
    if (!oracle::sidon(a.to_vector())) ++violations;
  }
  report("sidon-upper", violations == 0,
         fmt("|Σ*A| <= max(Σ*A)+1 <= |A|·max(A)+1 for 10 sets, %llu violations",
             static_cast<unsigned long long>(violations)));
}

void coloring_criterion() {
  std::uint64_t violations = 0, pairs = 0, outputs = 0;
  oracle::each_coloring(4, 2, [&](const oracle::Colors& a) {
    oracle::each_coloring(4, 2, [&](const oracle::Colors& b) {
      ++pairs;
      const Coloring prod = product_coloring(Coloring(2, {a.begin(), a.end()}), Coloring(2, {b.begin(), b.end()}));
      for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<int> pc, ac, bc;
        for (int i = 0; i < 4; ++i)
          if (mask >> i & 1U) pc.push_back(prod(i + 1)), ac.push_back(a[i]), bc.push_back(b[i]);
        auto mono = [](const std::vector<int>& v) { return std::all_of(v.begin(), v.end(), [&](int x) { return x == v[0]; }); };
        if (mono(pc) != (mono(ac) && mono(bc))) ++violations;
      }
    });
  });
  for (int r = 2; r <= 3; ++r)
    for (std::int64_t k = 2; k <= 4; ++k)
      for (std::int64_t n = 1; n <= 14; ++n)
        if (const auto c = find_ap_free_coloring(n, k, r)) {
          ++outputs;
          if (!ap_free(to_oracle(*c), k) || find_mono_ap(*c, k).has_value()) ++violations;
        }
  const auto c8 = find_ap_free_coloring(8, 3, 2);
  const bool feasible = c8 && ap_free(to_oracle(*c8), 3);
  const bool infeasible = !find_ap_free_coloring(9, 3, 2) &&
                          !oracle::extendable(9, 2, [](const oracle::Colors& p) { return oracle::mono_ap_ending_at_last(p, 3); });
  report("coloring", violations == 0 && feasible && infeasible,
         fmt("product law on %llu pairs over [4], %llu AP-free outputs self-verified, (8,3,2) %s, (9,3,2) %s, "
             "%llu violations",
             static_cast<unsigned long long>(pairs), static_cast<unsigned long long>(outputs),
             feasible ? "feasible" : "NOT feasible", infeasible ? "infeasible" : "NOT infeasible",
             static_cast<unsigned long long>(violations)));
}

void montecarlo_criterion() {
  const auto exact = exact_mono_cube_probability(4, 2);
  std::uint64_t hits = 0;
  oracle::each_coloring(4, 2, [&](const oracle::Colors& c) { hits += oracle::has_mono_cube(c, 2) ? 1 : 0; });
  const bool exact_ok = exact.probability == 0.125 && hits == 2;
  const auto sampled = estimate_mono_cube_probability(4, 2, 10000, kDefaultSeed);
  const double z = std::abs(sampled.probability - 0.125) / sampled.standard_error;
  report("montecarlo", exact_ok && z <= 3.0,
         fmt("exact %.6f (oracle %llu/16), sampled %.4f ± %.4f over 10000 trials (%.2f SE)", exact.probability,
             static_cast<unsigned long long>(hits), sampled.probability, sampled.standard_error, z));
}

void dense_box_criterion() {
  double lo = 1e300, hi = 0;
  std::uint64_t cross = 0;
  bool agree = true;
  for (std::int64_t m = 1; m <= 6; ++m)
    for (std::int64_t n = 1; n <= 6; ++n) {
      const GridSet box = GridSet::full_box({m, n});
      const auto size = static_cast<double>(box.size());
      const auto sums = grid_restricted_sumset(box).size();
      if (box.size() <= 12) {
        ++cross;
        std::vector<oracle::Point> pts;
        for (const auto& p : box.points()) pts.push_back({p[0], p[1]});
        agree = agree && oracle::grid_subset_sums(pts, 2).size() == sums;
      }
      const double ratio = static_cast<double>(sums) / (size * size * size);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  report("dense-box", agree && hi <= 10 * lo,
         fmt("|Σ*A|/|A|^3 over [m]x[n], m,n<=6, in [%.4f, %.4f], spread %.2fx; %llu small boxes matched the oracle",
             lo, hi, hi / lo, static_cast<unsigned long long>(cross)),
         false);
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  const auto baselines = load_baselines();
  vdw_criterion(baselines);
  vdw_stretch();
  hilbert_criterion(baselines);
  chain_criterion();
  mfold_criterion();
  census_criterion();
  gap_criterion();
  freiman_criterion();
  sidon_growth_criterion();
  sidon_upper_criterion();
  coloring_criterion();
  montecarlo_criterion();
  dense_box_criterion();
  std::printf("%d gating criteria failed, %.1fs total\n", gating_failures, since(t0));
  return gating_failures == 0 ? 0 : 1;
}
