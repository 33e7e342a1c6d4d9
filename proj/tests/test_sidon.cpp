#include <doctest.h>

#include <cmath>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/sidon.hpp"
#include "cubeforge/sumset.hpp"
#include "oracles.hpp"

using namespace cubeforge;

namespace {

std::int64_t sums_of(const IntSet& x) { return static_cast<std::int64_t>(oracle::subset_sums(x.to_vector()).size()); }

/// Chosen b for the small phase, by direct set arithmetic.
std::int64_t small_choice(const IntSet& a, const IntSet& x) {
  const auto sums = oracle::subset_sums(x.to_vector());
  std::vector<std::int64_t> unused;
  for (auto v : a)
    if (!x.contains(v)) unused.push_back(v);
  std::int64_t best_b = 0, best = -1;
  for (std::size_t i = 0; i < unused.size(); ++i)
    for (std::size_t j = i + 1; j < unused.size(); ++j) {
      const auto b = unused[i] + unused[j];
      std::int64_t overlap = 0;
      for (auto s : sums) overlap += sums.count(s - b);
      if (best < 0 || overlap < best || (overlap == best && b < best_b)) best = overlap, best_b = b;
    }
  return best_b;
}

}  // namespace

TEST_CASE("erdos_turan_sidon examples") {
  CHECK(erdos_turan_sidon(3).to_vector() == std::vector<std::int64_t>{0, 7, 13});
  for (std::int64_t p : {2, 5, 7, 11, 13, 31, 43}) {
    const IntSet s = erdos_turan_sidon(p);
    CHECK(static_cast<std::int64_t>(s.size()) == p);
    CHECK(oracle::sidon(s.to_vector()));
    CHECK(s.max() < 2 * p * p);
  }
  try {
    erdos_turan_sidon(9);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
  CHECK_THROWS_AS(erdos_turan_sidon(1), Error);
  CHECK_THROWS_AS(erdos_turan_sidon(1000003), Error);
}

TEST_CASE("mian_chowla examples") {
  CHECK(mian_chowla(1).to_vector() == std::vector<std::int64_t>{1});
  CHECK(mian_chowla(4).to_vector() == std::vector<std::int64_t>{1, 2, 4, 8});
  CHECK(mian_chowla(6).to_vector() == std::vector<std::int64_t>{1, 2, 4, 8, 13, 21});
  const IntSet long_run = mian_chowla(30);
  CHECK(oracle::sidon(long_run.to_vector()));
  // greedy: no smaller next term keeps the Sidon property
  const auto v = long_run.to_vector();
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::int64_t c = v[i - 1] + 1; c < v[i]; ++c) {
      std::vector<std::int64_t> prefix(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
      prefix.push_back(c);
      CHECK_FALSE(oracle::sidon(prefix));
    }
}

TEST_CASE("grow_small_phase matches a direct argmin and grows by half") {
  const IntSet a = mian_chowla(12);
  const auto first = grow_small_phase(a, IntSet{});
  CHECK(first.step.sums_before == 1);
  CHECK(first.step.sums_after >= 2);

  for (std::int64_t p : {11, 13, 17}) {
    const IntSet et = erdos_turan_sidon(p);
    IntSet x;
    const auto cap = binomial(p / 2, 2);
    while (static_cast<std::int64_t>(x.size()) + 2 <= p / 2 && sums_of(x) <= cap) {
      const auto res = grow_small_phase(et, x);
      CHECK(res.step.b == small_choice(et, x));
      CHECK(res.step.a1 + res.step.a2 == res.step.b);
      CHECK(res.step.sums_before == sums_of(x));
      CHECK(res.step.sums_after == sums_of(res.x));
      CHECK(2 * res.step.sums_after >= 3 * res.step.sums_before);
      CHECK(res.x.size() == x.size() + 2);
      x = res.x;
    }
  }
}

TEST_CASE("growth preconditions") {
  const IntSet a = erdos_turan_sidon(11);
  const auto v = a.to_vector();
  const IntSet big(std::vector<std::int64_t>(v.begin(), v.begin() + 6));
  try {
    grow_small_phase(a, big);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  const IntSet most(std::vector<std::int64_t>(v.begin(), v.begin() + 9));
  CHECK_THROWS_AS(grow_large_phase(a, most), Error);
  CHECK_THROWS_AS(grow_small_phase(IntSet{1, 2, 3}, IntSet{}), Error);
  CHECK_THROWS_AS(grow_small_phase(a, IntSet{1000}), Error);
  CHECK_THROWS_AS(sidon_cubic_lowerbound(IntSet{1, 2, 3, 5}), Error);
  CHECK_THROWS_AS(sidon_cubic_lowerbound(IntSet{1, 2, 3, 4, 5, 6, 7, 8, 9}), Error);
}

TEST_CASE("first large step for p = 13 gains at least 2") {
  const auto trace = sidon_cubic_lowerbound(erdos_turan_sidon(13));
  REQUIRE(trace.large_steps >= 1);
  const auto& first = trace.steps[static_cast<std::size_t>(trace.small_steps)];
  CHECK(first.phase == GrowthPhase::Large);
  CHECK(first.sums_after - first.sums_before >= 2);
  CHECK(first.candidates <= first.sums_before);
}

TEST_CASE("growth traces keep every step guarantee") {
  for (std::int64_t p : {11, 13, 17, 19, 23}) {
    const IntSet a = erdos_turan_sidon(p);
    const auto t = sidon_cubic_lowerbound(a);
    CHECK(t.a_size == p);
    CHECK(t.small_steps + t.large_steps == static_cast<std::int64_t>(t.steps.size()));
    const double small_limit = 2 * std::log(static_cast<double>(binomial(p / 2, 2))) / std::log(1.5);
    CHECK(t.small_steps <= small_limit + 1);
    const auto gain = (binomial(p / 4, 2) + 1) / 2;
    std::int64_t previous = 1;
    for (const auto& s : t.steps) {
      CHECK(s.sums_before == previous);
      CHECK(s.x_after == s.x_before + 2);
      if (s.phase == GrowthPhase::Small) CHECK(2 * s.sums_after >= 3 * s.sums_before);
      else CHECK(s.sums_after - s.sums_before >= gain);
      previous = s.sums_after;
    }
    CHECK(t.final_sums == sums_of(t.x));
    CHECK(64 * t.final_sums >= (p / 4) * (p / 4) * (p / 8));
    CHECK(static_cast<std::int64_t>(t.x.size()) <= 3 * p / 4 + 2);
    CHECK(t.c == doctest::Approx(static_cast<double>(t.final_sums) / (p * p * p)));
  }
  const IntSet mc = mian_chowla(8);
  const auto t = sidon_cubic_lowerbound(mc);
  const auto x_small = 2 * t.small_steps;
  CHECK(t.large_steps >= (6 - x_small) / 2);
}
