#include "cubeforge/ramsey.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "cubeforge/checked.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/sumset.hpp"

namespace cubeforge {

std::string_view kind_label(RamseyKind kind) {
  return kind == RamseyKind::VanDerWaerden ? "vdw" : "hilbert";
}

namespace {

bool has_mono(RamseyKind kind, const Coloring& c, std::int64_t k, const Limits& limits) {
  return kind == RamseyKind::VanDerWaerden ? find_mono_ap(c, k).has_value()
                                           : find_mono_cube(c, k, kUnboundedCap, limits).has_value();
}

RamseyResult search_number(RamseyKind kind, std::int64_t k, int r, std::int64_t n_max, const Limits& limits) {
  const auto check = kind == RamseyKind::VanDerWaerden ? detail::ap_conflict : detail::cube_conflict;
  RamseyResult out;
  out.kind = kind;
  out.k = k;
  out.r = r;
  out.n_max = n_max;

  // One resumable depth-first pass: the first good coloring of [n+1] in
  // lexicographic order extends past the first good coloring of [n], so each
  // target picks up where the previous one stopped.
  detail::Backtracker bt(r, k, check, limits.node_budget);
  std::int64_t good = 0;
  std::optional<Coloring> last_good;
  while (good < n_max && bt.advance(good + 1)) {
    ++good;
    last_good = Coloring(r, bt.colors());
  }
  out.search_nodes = bt.nodes();

  if (good == n_max) {
    out.value = n_max;
    out.witness = last_good;
    if (out.witness) ensure(!has_mono(kind, *out.witness, k, limits), "lower-bound witness is good");
    return out;
  }

  // Certify both sides independently of the incremental pass.
  out.exact = true;
  out.value = good + 1;
  out.witness = last_good;
  if (out.witness) ensure(!has_mono(kind, *out.witness, k, limits), "witness at value-1 has no mono structure");
  SearchStats stats;
  const auto again = detail::search_coloring(out.value, k, r, check, limits, &stats);
  ensure(!again.has_value(), "exhaustive search at value finds no good coloring");
  out.exhaustion_nodes = stats.nodes;
  return out;
}

RamseyResult closed_form(RamseyKind kind, std::int64_t k, int r, std::int64_t n_max, std::int64_t value) {
  RamseyResult out;
  out.kind = kind;
  out.k = k;
  out.r = r;
  out.n_max = n_max;
  const std::int64_t good = std::min(value - 1, n_max);
  out.exact = value <= n_max;
  out.value = out.exact ? value : n_max;
  // Positions 1..good get distinct colors.
  std::vector<std::uint8_t> colors(static_cast<std::size_t>(std::max<std::int64_t>(good, 0)));
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = static_cast<std::uint8_t>(i);
  out.witness = Coloring(r, std::move(colors));
  return out;
}

}  // namespace

RamseyResult vdw_number(std::int64_t k, int r, std::int64_t n_max, const Limits& limits) {
  require(k >= 1, ErrorKind::Domain, "k must be at least 1");
  require(r >= 2 && r <= 255, ErrorKind::Domain, "r must be in 2..255");
  require(n_max >= 1, ErrorKind::Domain, "n_max must be at least 1");
  if (k == 1) return closed_form(RamseyKind::VanDerWaerden, k, r, n_max, 1);
  // A 2-term AP is any pair, so pigeonhole settles W(2, r).
  if (k == 2) return closed_form(RamseyKind::VanDerWaerden, k, r, n_max, r + 1);
  return search_number(RamseyKind::VanDerWaerden, k, r, n_max, limits);
}

RamseyResult hilbert_number(std::int64_t k, int r, std::int64_t n_max, const Limits& limits) {
  require(k >= 1, ErrorKind::Domain, "k must be at least 1");
  require(r >= 2 && r <= 255, ErrorKind::Domain, "r must be in 2..255");
  require(n_max >= 1, ErrorKind::Domain, "n_max must be at least 1");
  return search_number(RamseyKind::Hilbert, k, r, n_max, limits);
}

CensusResult census_small_sumsets(std::int64_t n, std::int64_t k, std::int64_t u, const Limits& limits) {
  require(n >= 1 && k >= 1 && k <= 30, ErrorKind::Domain, "need n >= 1 and 1 <= k <= 30");
  require(2 * u >= k * (k + 1), ErrorKind::Precondition, "census needs u >= k(k+1)/2");
  CensusResult out;
  out.n = n;
  out.k = k;
  out.u = u;
  const std::int64_t subsets = binomial(n, k);
  if (static_cast<std::uint64_t>(subsets) > limits.enumeration_cap)
    fail(ErrorKind::Budget, "C(n, k) = " + std::to_string(subsets) + " exceeds the enumeration cap");
  out.subsets = static_cast<std::uint64_t>(subsets);

  // Walk k-subsets of [n] in lexicographic order.
  std::vector<std::int64_t> pick(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i + 1;
  const auto kk = static_cast<std::size_t>(k);
  if (k <= n) {
    while (true) {
      const IntSet s(std::vector<std::int64_t>(pick.begin(), pick.end()));
      if (static_cast<std::int64_t>(restricted_sumset(s, limits).size()) <= u) ++out.count;
      std::size_t i = kk;
      while (i > 0 && pick[i - 1] == n - static_cast<std::int64_t>(kk - i)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < kk; ++j) pick[j] = pick[j - 1] + 1;
    }
  }

  const double log2u = std::log2(static_cast<double>(u));
  out.log2_bound = log2u * std::log2(static_cast<double>(k * n)) + 2.0 * static_cast<double>(k) * log2u;
  out.bound = std::exp2(out.log2_bound);
  out.pass = out.count == 0 || std::log2(static_cast<double>(out.count)) <= out.log2_bound;
  return out;
}

ConsistencyReport consistency_h_le_w(std::int64_t k, int r, std::int64_t n_max_hilbert, std::int64_t n_max_vdw,
                                     const Limits& limits) {
  ConsistencyReport rep;
  rep.k = k;
  rep.r = r;
  rep.hilbert = hilbert_number(k, r, n_max_hilbert, limits);
  rep.repeat_free_length = k * (k + 1) / 2 + 1;
  rep.vdw_repeat_free = vdw_number(rep.repeat_free_length, r, n_max_vdw, limits);

  auto verdict = [&](const RamseyResult& w) -> std::string {
    // h <= W is decided when h is exact and W is exact, or when h is exact
    // and already below W's certified lower bound.
    if (rep.hilbert.exact && w.exact) return rep.hilbert.value <= w.value ? "holds" : "violated";
    if (rep.hilbert.exact && rep.hilbert.value <= w.value) return "holds";
    if (!rep.hilbert.exact && w.exact && rep.hilbert.value >= w.value) return "violated";
    return "inconclusive";
  };
  rep.repeat_free_verdict = verdict(rep.vdw_repeat_free);

  rep.literal_length = binomial(k, 2);
  if (rep.literal_length >= 1) {
    rep.vdw_literal = vdw_number(rep.literal_length, r, n_max_vdw, limits);
    rep.literal_verdict = verdict(*rep.vdw_literal);
  } else {
    rep.literal_verdict = "inconclusive";
  }
  return rep;
}

std::vector<BaselineEntry> parse_baselines(std::string_view text) {
  std::vector<BaselineEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line.substr(first));
    std::string field;
    while (std::getline(ls, field, ',')) {
      const auto b = field.find_first_not_of(" \t\r");
      const auto e = field.find_last_not_of(" \t\r");
      fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
    }
    require(fields.size() == 4, ErrorKind::Parse, "baseline line " + std::to_string(lineno) + " needs 4 fields");
    BaselineEntry entry;
    if (fields[0] == "vdw") entry.kind = RamseyKind::VanDerWaerden;
    else if (fields[0] == "hilbert") entry.kind = RamseyKind::Hilbert;
    else fail(ErrorKind::Parse, "unknown baseline kind '" + fields[0] + "'");
    auto to_int = [&](const std::string& s) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      require(ec == std::errc{} && ptr == s.data() + s.size(), ErrorKind::Parse,
              "bad integer '" + s + "' on baseline line " + std::to_string(lineno));
      return v;
    };
    entry.k = to_int(fields[1]);
    entry.r = static_cast<int>(to_int(fields[2]));
    entry.value = to_int(fields[3]);
    out.push_back(entry);
  }
  return out;
}

std::string format_baselines(const std::vector<BaselineEntry>& entries) {
  std::ostringstream out;
  out << kBaselineHeader << '\n';
  for (const auto& e : entries) out << kind_label(e.kind) << ',' << e.k << ',' << e.r << ',' << e.value << '\n';
  return out.str();
}

std::optional<std::int64_t> lookup_baseline(const std::vector<BaselineEntry>& entries, RamseyKind kind,
                                            std::int64_t k, int r) {
  for (const auto& e : entries)
    if (e.kind == kind && e.k == k && e.r == r) return e.value;
  return std::nullopt;
}

}  // namespace cubeforge
