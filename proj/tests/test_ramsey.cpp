#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cubeforge/error.hpp"
#include "cubeforge/ramsey.hpp"
#include "oracles.hpp"

#ifndef CUBEFORGE_TEST_DATA
#define CUBEFORGE_TEST_DATA "."
#endif

using namespace cubeforge;

namespace {

std::int64_t vdw_oracle(std::int64_t k, int r, std::int64_t limit) {
  return oracle::ramsey_number(r, limit, [k](const oracle::Colors& c) { return oracle::mono_ap_ending_at_last(c, k); });
}

std::int64_t hilbert_oracle(std::int64_t k, int r, std::int64_t limit) {
  return oracle::ramsey_number(r, limit, [k](const oracle::Colors& c) { return oracle::mono_cube_ending_at_last(c, k); });
}

oracle::Colors to_oracle(const Coloring& c) { return {c.colors().begin(), c.colors().end()}; }

std::string baseline_text() {
  std::ifstream in(std::string(CUBEFORGE_TEST_DATA) + "/baselines/ramsey_baselines.csv");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_certified(const RamseyResult& res, std::int64_t expect, bool cube) {
  CHECK(res.exact);
  CHECK(res.value == expect);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->n() == expect - 1);
  const auto c = to_oracle(*res.witness);
  const bool mono = cube ? oracle::has_mono_cube(c, res.k) : oracle::has_mono_ap(c, res.k);
  CHECK_FALSE(mono);
}

}  // namespace

TEST_CASE("van der Waerden numbers against the plain recursion oracle") {
  CHECK(vdw_number(1, 2, 5).value == 1);
  CHECK(vdw_number(2, 3, 10).value == 4);
  for (auto [k, r] : {std::pair<std::int64_t, int>{2, 2}, {3, 2}, {2, 4}, {4, 2}}) {
    const auto res = vdw_number(k, r, 60);
    check_certified(res, vdw_oracle(k, r, 60), false);
  }
  check_certified(vdw_number(3, 2, 20), 9, false);
  check_certified(vdw_number(4, 2, 40), 35, false);
}

TEST_CASE("van der Waerden search below the value is reported as inexact") {
  const auto res = vdw_number(3, 2, 6);
  CHECK_FALSE(res.exact);
  CHECK(res.value == 6);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->n() == 6);
  CHECK_FALSE(oracle::has_mono_ap(to_oracle(*res.witness), 3));
  CHECK_THROWS_AS(vdw_number(0, 2, 5), Error);
  CHECK_THROWS_AS(vdw_number(3, 1, 5), Error);
}

TEST_CASE("Hilbert cube numbers against the plain recursion oracle") {
  check_certified(hilbert_number(1, 2, 10), 3, true);
  CHECK(hilbert_oracle(1, 2, 10) == 3);
  check_certified(hilbert_number(1, 3, 10), 4, true);
  const auto h22 = hilbert_number(2, 2, 30);
  check_certified(h22, hilbert_oracle(2, 2, 30), true);
  CHECK(h22.value == 11);
  CHECK(h22.exhaustion_nodes > 0);
}

TEST_CASE("search timeouts are errors, not answers") {
  Limits tight;
  tight.node_budget = 50;
  try {
    vdw_number(4, 2, 40, tight);
    FAIL("expected a timeout");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Timeout);
  }
}

TEST_CASE("census_small_sumsets examples and oracle") {
  const auto c7 = census_small_sumsets(10, 3, 7);
  CHECK(c7.count == 20);
  CHECK(c7.subsets == 120);
  CHECK(c7.pass);
  CHECK(census_small_sumsets(10, 3, 6).count == 0);
  CHECK_THROWS_AS(census_small_sumsets(10, 3, 5), Error);
  for (std::int64_t n = 3; n <= 12; ++n)
    for (std::int64_t k = 1; k <= 3; ++k)
      for (std::int64_t u = k * (k + 1) / 2; u <= 12; u += 2) {
        const auto res = census_small_sumsets(n, k, u);
        CHECK(res.count == oracle::census(n, k, u));
        CHECK(res.pass);
      }
  Limits tight;
  tight.enumeration_cap = 100;
  try {
    census_small_sumsets(20, 4, 40, tight);
    FAIL("expected a budget error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Budget);
  }
}

TEST_CASE("baselines round-trip and match the pinned file") {
  const auto entries = parse_baselines(baseline_text());
  REQUIRE(entries.size() == 4);
  CHECK(lookup_baseline(entries, RamseyKind::VanDerWaerden, 4, 2) == 35);
  CHECK(lookup_baseline(entries, RamseyKind::Hilbert, 2, 2) == 11);
  CHECK_FALSE(lookup_baseline(entries, RamseyKind::Hilbert, 3, 2).has_value());
  CHECK(parse_baselines(format_baselines(entries)) == entries);
  CHECK(format_baselines(entries).rfind(std::string(kBaselineHeader), 0) == 0);
  CHECK_THROWS_AS(parse_baselines("vdw,3,2\n"), Error);
  CHECK_THROWS_AS(parse_baselines("schur,3,2,5\n"), Error);

  for (const auto& e : entries) {
    const auto res = e.kind == RamseyKind::VanDerWaerden ? vdw_number(e.k, e.r, 60) : hilbert_number(e.k, e.r, 60);
    CHECK(res.exact);
    CHECK(res.value == e.value);
  }
}

TEST_CASE("h(2,2) sits below the van der Waerden numbers it is compared to") {
  const auto rep = consistency_h_le_w(2, 2, 30, 60);
  CHECK(rep.hilbert.value == 11);
  CHECK(rep.repeat_free_length == 4);
  CHECK(rep.vdw_repeat_free.value == 35);
  CHECK(rep.repeat_free_verdict == "holds");
  CHECK(rep.literal_length == 1);
  REQUIRE(rep.vdw_literal.has_value());
  CHECK(rep.vdw_literal->value == 1);
  CHECK(rep.literal_verdict == "violated");
}
