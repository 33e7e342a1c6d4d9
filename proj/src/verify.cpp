#include "cubeforge/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/sumset.hpp"

namespace cubeforge {

namespace {

// Deterministic draws from the SplitMix64 stream.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : seed_(seed) {}

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<unsigned __int128>(static_cast<std::uint64_t>(hi - lo) + 1);
    return lo + static_cast<std::int64_t>((span * splitmix64_at(seed_, index_++)) >> 64);
  }

  std::vector<std::int64_t> distinct(std::size_t count, std::int64_t lo, std::int64_t hi) {
    std::set<std::int64_t> pick;
    while (pick.size() < count) pick.insert(between(lo, hi));
    return {pick.begin(), pick.end()};
  }

 private:
  std::uint64_t seed_;
  std::uint64_t index_ = 0;
};

struct Tally {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;

  void check(bool ok) {
    ++checks;
    if (!ok) ++violations;
  }
};

void close(SuiteReport& rep, const Tally& t) {
  rep.checks = t.checks;
  rep.violations = t.violations;
  rep.pass = t.violations == 0;
}

std::uint64_t seed_of(const Json& p) { return p.value("seed", kDefaultSeed); }

std::vector<std::int64_t> subset_sums_by_enumeration(const std::vector<std::int64_t>& a) {
  std::vector<std::int64_t> sums(std::size_t{1} << a.size(), 0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    sums[mask] = sums[mask & (mask - 1)] + a[low];
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

SuiteReport run_chain(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "chain"};
  const auto trials = p.value("trials", std::int64_t{10000});
  const auto max_size = std::min<std::int64_t>(p.value("max_size", std::int64_t{14}), 20);
  const auto max_value = p.value("max_value", std::int64_t{1000});
  require(max_size >= 1 && max_value >= max_size, ErrorKind::Domain, "chain suite needs max_value >= max_size >= 1");
  Draws draws(seed_of(p));
  Tally t;
  std::int64_t tightest = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t i = 0; i < trials; ++i) {
    const auto n = draws.between(1, max_size);
    const IntSet a(draws.distinct(static_cast<std::size_t>(n), 1, max_value));
    const IntSet sums = restricted_sumset(a, limits);
    const auto floor = binomial(n + 1, 2) + 1;
    t.check(static_cast<std::int64_t>(sums.size()) >= floor);
    tightest = std::min(tightest, static_cast<std::int64_t>(sums.size()) - floor);
    t.check(sums.to_vector() == subset_sums_by_enumeration(a.to_vector()));
  }
  close(rep, t);
  rep.measured = {{"trials", trials}, {"smallest_margin_over_chain_bound", tightest}};
  return rep;
}

SuiteReport run_mfold(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "mfold"};
  const auto max_size = p.value("max_size", std::int64_t{10});
  const auto max_m = p.value("max_m", std::int64_t{5});
  const auto per_cell = p.value("trials_per_cell", std::int64_t{20});
  const auto max_value = p.value("max_value", std::int64_t{200});
  Draws draws(seed_of(p));
  Tally t;
  double worst_ratio = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= max_size; ++n) {
    for (std::int64_t m = 1; m <= max_m; ++m) {
      for (std::int64_t i = 0; i < per_cell; ++i) {
        const IntSet a(draws.distinct(static_cast<std::size_t>(n), 1, max_value));
        const auto size = static_cast<std::int64_t>(m_fold_restricted_sumset(a, m, limits).size());
        const auto bound = m * binomial(n + 1, 2) - m + 1;
        t.check(size >= bound);
        worst_ratio = std::min(worst_ratio, static_cast<double>(size) / static_cast<double>(bound));
        if (n <= 6 && m <= 3)
          t.check(m_fold_restricted_sumset(a, m, limits) == m_fold_sumset(restricted_sumset(a, limits), m, limits));
      }
    }
  }
  close(rep, t);
  rep.measured = {{"min_size_over_bound", worst_ratio}};
  return rep;
}

SuiteReport run_census(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "census"};
  const auto n_max = p.value("n_max", std::int64_t{25});
  const auto k_max = p.value("k_max", std::int64_t{4});
  const auto u_max = p.value("u_max", std::int64_t{40});
  Tally t;
  const auto pinned_6 = census_small_sumsets(10, 3, 6, limits).count;
  const auto pinned_7 = census_small_sumsets(10, 3, 7, limits).count;
  t.check(pinned_6 == 0);
  t.check(pinned_7 == 20);

  std::uint64_t skipped = 0;
  double tightest = std::numeric_limits<double>::infinity();  // min log2(bound) - log2(count)
  for (std::int64_t n = 1; n <= n_max; ++n) {
    for (std::int64_t k = 1; k <= std::min(k_max, n); ++k) {
      if (static_cast<std::uint64_t>(binomial(n, k)) > limits.enumeration_cap) {
        ++skipped;
        continue;
      }
      // Histogram of |Σ*S| over all k-subsets, then every u at once.
      std::vector<std::uint64_t> hist(static_cast<std::size_t>(u_max) + 2, 0);
      std::vector<std::int64_t> pick(static_cast<std::size_t>(k));
      for (std::int64_t i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
      const auto kk = static_cast<std::size_t>(k);
      while (true) {
        const auto size = static_cast<std::int64_t>(restricted_sumset(IntSet(pick), limits).size());
        ++hist[static_cast<std::size_t>(std::min(size, u_max + 1))];
        std::size_t i = kk;
        while (i > 0 && pick[i - 1] == n - static_cast<std::int64_t>(kk - i)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < kk; ++j) pick[j] = pick[j - 1] + 1;
      }
      std::uint64_t cumulative = 0;
      for (std::int64_t u = 1; u <= u_max; ++u) {
        cumulative += hist[static_cast<std::size_t>(u)];
        if (2 * u < k * (k + 1)) continue;
        const double log2u = std::log2(static_cast<double>(u));
        const double log2_bound = log2u * std::log2(static_cast<double>(k * n)) + 2.0 * static_cast<double>(k) * log2u;
        const bool ok = cumulative == 0 || std::log2(static_cast<double>(cumulative)) <= log2_bound;
        t.check(ok);
        if (cumulative > 0) tightest = std::min(tightest, log2_bound - std::log2(static_cast<double>(cumulative)));
      }
    }
  }
  close(rep, t);
  rep.measured = {{"census_10_3_6", pinned_6},
                  {"census_10_3_7", pinned_7},
                  {"skipped_over_cap", skipped},
                  {"min_log2_slack", tightest}};
  return rep;
}

SuiteReport run_dense_gap(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "dense-gap", .gating = false};
  const auto side = p.value("max_side", std::int64_t{6});
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  Json rows = Json::array();
  Tally t;
  for (std::int64_t m = 1; m <= side; ++m) {
    for (std::int64_t n = 1; n <= side; ++n) {
      const GridSet box = GridSet::full_box({m, n});
      const auto size = static_cast<double>(grid_restricted_sumset(box, 1, limits).size());
      const auto cells = static_cast<double>(box.size());
      const double ratio = size / (cells * cells * cells);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      rows.push_back({{"m", m}, {"n", n}, {"sumset_size", size}, {"ratio_cubic", ratio}});
    }
  }
  // The d = 1 quadratic bound is exact and does gate.
  Draws draws(seed_of(p));
  for (int i = 0; i < 200; ++i) {
    const auto count = draws.between(2, 12);
    std::vector<GridPoint> pts;
    for (auto v : draws.distinct(static_cast<std::size_t>(count), 1, 40)) pts.push_back({v, 0, 0, 0});
    const auto report = verify_dense_gap_bound(GridSet(1, pts, std::vector<std::int64_t>{40}), draws.between(1, 4), limits);
    t.check(report.d1_quadratic_bound_holds.value_or(true));
  }
  close(rep, t);
  const bool within = hi <= 10.0 * lo;
  rep.measured = {{"min_ratio_cubic", lo}, {"max_ratio_cubic", hi}, {"within_factor_10", within}, {"boxes", rows}};
  return rep;
}

SuiteReport run_sidon_growth(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "sidon-growth"};
  const std::vector<std::int64_t> primes =
      p.value("primes", std::vector<std::int64_t>{11, 13, 17, 19, 23, 29, 31, 37, 41, 43});
  Tally t;
  Json rows = Json::array();
  for (const auto prime : primes) {
    const IntSet a = erdos_turan_sidon(prime);
    const auto trace = sidon_cubic_lowerbound(a, limits);
    const auto n = trace.a_size;
    const auto quarter = n / 4;
    const auto gain = (binomial(quarter, 2) + 1) / 2;
    for (const auto& s : trace.steps) {
      if (s.phase == GrowthPhase::Small) t.check(2 * s.sums_after >= 3 * s.sums_before);
      else t.check(s.sums_after - s.sums_before >= gain);
    }
    t.check(64 * trace.final_sums >= quarter * quarter * (n / 8));
    const IntSet full = restricted_sumset(a, limits);
    const auto full_size = static_cast<std::int64_t>(full.size());
    t.check(full_size >= trace.final_sums);
    t.check(full_size <= full.max() + 1 && full.max() + 1 <= n * a.max() + 1);
    rows.push_back({{"p", prime},
                    {"small_steps", trace.small_steps},
                    {"large_steps", trace.large_steps},
                    {"small_exit", trace.small_exit},
                    {"final_sums", trace.final_sums},
                    {"c", trace.c},
                    {"full_sums", full_size},
                    {"full_over_cube", static_cast<double>(full_size) / static_cast<double>(n * n * n)}});
  }
  close(rep, t);
  rep.measured = {{"sets", rows}};
  return rep;
}

SuiteReport run_product_law(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "product-law"};
  const auto n = std::min<std::int64_t>(p.value("n", std::int64_t{4}), 8);
  Tally t;
  const std::uint32_t total = 1U << n;
  auto make = [&](std::uint32_t bits) {
    std::vector<std::uint8_t> c(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (bits >> i) & 1U;
    return Coloring(2, std::move(c));
  };
  for (std::uint32_t x = 0; x < total; ++x) {
    for (std::uint32_t y = 0; y < total; ++y) {
      const Coloring c1 = make(x), c2 = make(y);
      const Coloring prod = product_coloring(c1, c2);
      for (std::uint32_t s = 1; s < total; ++s) {
        std::vector<std::int64_t> members;
        for (std::int64_t i = 0; i < n; ++i)
          if ((s >> i) & 1U) members.push_back(i + 1);
        t.check(is_monochromatic(prod, members) ==
                (is_monochromatic(c1, members) && is_monochromatic(c2, members)));
      }
    }
  }
  const auto feasible = find_ap_free_coloring(8, 3, 2, limits);
  t.check(feasible.has_value() && !find_mono_ap(*feasible, 3));
  t.check(!find_ap_free_coloring(9, 3, 2, limits).has_value());
  close(rep, t);
  rep.measured = {{"n", n}, {"ap_free_8_3_2", feasible ? Json(feasible->digits()) : Json(nullptr)}};
  return rep;
}

SuiteReport run_gap(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "gap"};
  const auto trials = p.value("trials", std::int64_t{1000});
  const auto max_mn = p.value("max_mn", std::int64_t{6});
  const auto max_d = p.value("max_d", std::int64_t{50});
  Draws draws(seed_of(p));
  Tally t;
  std::int64_t collisions = 0;
  std::int64_t drawn = 0;
  for (std::int64_t made = 0; made < trials; ++drawn) {
    const auto m = draws.between(1, max_mn), n = draws.between(1, max_mn);
    auto d1 = draws.between(1, max_d), d2 = draws.between(1, max_d);
    if (draws.between(0, 1) == 1) d1 = -d1;
    if (draws.between(0, 1) == 1) d2 = -d2;
    const Gap q = Gap::centered_rank2(draws.between(-100, 100), d1, d2, m, n);
    if (!is_proper(q, limits)) continue;
    ++made;
    const IntSet values = enumerate_gap(q, limits);
    const auto dec = decompose_rank2(q, limits);
    std::vector<std::int64_t> all;
    for (const auto& part : dec.parts) all.insert(all.end(), part.begin(), part.end());
    std::sort(all.begin(), all.end());
    t.check(std::adjacent_find(all.begin(), all.end()) == all.end());
    t.check(IntSet(all) == translate(values, -q.base()));

    const ApWitness r = containing_ap(q);
    bool covered = true;
    for (const auto v : values) {
      const auto off = v - r.start;
      covered = covered && off >= 0 && off % r.difference == 0 && off / r.difference < r.length;
    }
    t.check(covered);
    const auto g = std::gcd(d1, d2);
    t.check(r.length <= 1 + 2 * (m * std::llabs(d1) + n * std::llabs(d2)) / g);

    if (const auto w = find_collision(d1, d2, m, n, 2)) {
      ++collisions;
      t.check(w->x1 * d1 + w->x2 * d2 == w->y1 * d1 + w->y2 * d2);
      t.check(std::llabs(w->x2 - w->y2) % (std::llabs(d1) / g) == 0);
    }
  }
  close(rep, t);
  rep.measured = {{"gaps", trials}, {"drawn", drawn}, {"collisions_found", collisions}};
  return rep;
}

SuiteReport run_freiman(const Json& p, const Limits& limits) {
  SuiteReport rep{.name = "freiman"};
  const auto per_box = p.value("subsets_per_box", std::int64_t{200});
  const auto max_subset = p.value("max_subset", std::int64_t{6});
  Draws draws(seed_of(p));
  Tally t;
  std::uint64_t inequality_failures = 0;
  std::uint64_t boxes = 0;
  for (int d = 1; d <= 3; ++d) {
    std::vector<std::int64_t> dims(static_cast<std::size_t>(d), 1);
    while (true) {
      ++boxes;
      const GridSet box = GridSet::full_box(dims);
      std::set<std::pair<std::int64_t, std::int64_t>> images;
      for (const auto& pt : box.points())
        images.insert(freiman_embed_box(std::span(pt.data(), static_cast<std::size_t>(d)), dims));
      t.check(images.size() == box.size());

      const auto cap = std::min<std::int64_t>(max_subset, static_cast<std::int64_t>(box.size()));
      for (std::int64_t i = 0; i < per_box; ++i) {
        const auto size = draws.between(1, cap);
        std::vector<GridPoint> pts;
        for (auto idx : draws.distinct(static_cast<std::size_t>(size), 0, static_cast<std::int64_t>(box.size()) - 1))
          pts.push_back(box.points()[static_cast<std::size_t>(idx)]);
        const GridSet a(d, pts, dims);
        const auto direct = grid_restricted_sumset(a, 1, limits).size();
        const auto flat = grid_restricted_sumset(freiman_embed_set(a), 1, limits).size();
        t.check(flat == direct);
        if (flat > direct) ++inequality_failures;
      }

      std::size_t axis = 0;
      while (axis < dims.size() && dims[axis] == 3) dims[axis++] = 1;
      if (axis == dims.size()) break;
      ++dims[axis];
    }
  }
  close(rep, t);
  rep.measured = {{"boxes", boxes}, {"inequality_failures", inequality_failures}};
  return rep;
}

using SuiteFn = std::function<SuiteReport(const Json&, const Limits&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"chain", run_chain},     {"mfold", run_mfold}, {"census", run_census},
      {"dense-gap", run_dense_gap}, {"sidon-growth", run_sidon_growth}, {"product-law", run_product_law},
      {"gap", run_gap},         {"freiman", run_freiman},
  };
  return suites;
}

}  // namespace

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass || !s.gating; });
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

Json default_verify_config() {
  Json suites = Json::object();
  for (const auto& name : known_suites())
    if (name != "freiman") suites[name] = Json::object();
  return {{"suites", suites}};
}

VerifyReport verify_bounds(const Json& config, const Limits& limits) {
  require(config.is_object(), ErrorKind::Parse, "verify config must be a JSON object");
  VerifyReport report;
  if (!config.contains("suites")) return report;
  const Json& wanted = config.at("suites");
  require(wanted.is_object(), ErrorKind::Parse, "\"suites\" must map suite names to parameter objects");
  for (const auto& [name, params] : wanted.items()) {
    require(std::find(known_suites().begin(), known_suites().end(), name) != known_suites().end(), ErrorKind::Parse,
            "unknown suite '" + name + "'");
    require(params.is_object(), ErrorKind::Parse, "parameters for '" + name + "' must be an object");
  }
  for (const auto& [name, fn] : registry()) {
    if (!wanted.contains(name)) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport rep = fn(wanted.at(name), limits);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.suites.push_back(std::move(rep));
  }
  return report;
}

Json to_json(const VerifyReport& report) {
  Json suites = Json::array();
  for (const auto& s : report.suites) {
    suites.push_back({{"name", s.name},
                      {"pass", s.pass},
                      {"gating", s.gating},
                      {"checks", s.checks},
                      {"violations", s.violations},
                      {"seconds", s.seconds},
                      {"measured", s.measured}});
  }
  return {{"pass", report.pass()}, {"suites", suites}};
}

}  // namespace cubeforge
