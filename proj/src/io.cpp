#include "cubeforge/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cubeforge/error.hpp"

namespace cubeforge {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::int64_t parse_int(std::string_view token) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec == std::errc::result_out_of_range) fail(ErrorKind::Overflow, "integer '" + std::string(token) + "' exceeds 64 bits");
  require(!token.empty() && ec == std::errc{} && ptr == token.data() + token.size(), ErrorKind::Parse,
          "expected an integer, got '" + std::string(token) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return trim(hash == std::string_view::npos ? line : line.substr(0, hash));
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto piece : split(text, '\n')) {
    piece = strip_comment(piece);
    if (!piece.empty()) out.push_back(piece);
  }
  return out;
}

Json point_json(const GridPoint& p, int dim) {
  Json out = Json::array();
  for (int i = 0; i < dim; ++i) out.push_back(p[static_cast<std::size_t>(i)]);
  return out;
}

Json coloring_json(const Coloring& c) {
  if (c.r() <= 10) return c.digits();
  Json out = Json::array();
  for (auto v : c.colors()) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Parse, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

IntSet parse_set(std::string_view text) {
  std::vector<std::int64_t> values;
  for (auto line : split(text, '\n')) {
    line = strip_comment(line);
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ',' || line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ',' && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) values.push_back(parse_int(line.substr(i, j - i)));
      i = j;
    }
  }
  return IntSet(std::move(values));
}

Gap parse_gap(std::string_view text) {
  const auto lines = lines_of(text);
  require(lines.size() == 1, ErrorKind::Parse, "GAP descriptor must be a single line");
  const auto parts = split(lines.front(), ';');
  require(parts.size() == 3, ErrorKind::Parse, "GAP descriptor needs 'a; d1,d2,...; m1..M1, ...'");
  const std::int64_t base = parse_int(parts[0]);
  std::vector<std::int64_t> diffs;
  for (auto d : split(parts[1], ',')) diffs.push_back(parse_int(d));
  std::vector<AxisRange> ranges;
  for (auto r : split(parts[2], ',')) {
    const auto dots = r.find("..");
    require(dots != std::string_view::npos, ErrorKind::Parse, "range '" + std::string(r) + "' must look like m..M");
    ranges.push_back({parse_int(r.substr(0, dots)), parse_int(r.substr(dots + 2))});
  }
  require(diffs.size() == ranges.size(), ErrorKind::Parse, "one range per difference");
  return Gap(base, std::move(diffs), std::move(ranges));
}

GridSet parse_grid(std::string_view text) {
  auto lines = lines_of(text);
  std::optional<std::vector<std::int64_t>> box;
  std::size_t first = 0;
  if (!lines.empty() && lines.front().substr(0, 4) == "box:") {
    std::vector<std::int64_t> dims;
    for (auto d : split(lines.front().substr(4), ',')) dims.push_back(parse_int(d));
    box = std::move(dims);
    first = 1;
  }
  int dim = box ? static_cast<int>(box->size()) : 0;
  std::vector<GridPoint> points;
  for (std::size_t li = first; li < lines.size(); ++li) {
    const auto coords = split(lines[li], ',');
    if (dim == 0) dim = static_cast<int>(coords.size());
    require(static_cast<int>(coords.size()) == dim, ErrorKind::Parse,
            "point '" + std::string(lines[li]) + "' has the wrong dimension");
    require(dim <= kMaxGridDim, ErrorKind::Shape, "grid dimension must be at most 4");
    GridPoint p{};
    for (std::size_t i = 0; i < coords.size(); ++i) p[i] = parse_int(coords[i]);
    points.push_back(p);
  }
  require(dim >= 1, ErrorKind::Parse, "grid file has neither a box header nor points");
  return GridSet(dim, std::move(points), std::move(box));
}

Coloring parse_coloring(std::string_view text, int r) {
  std::vector<std::uint8_t> colors;
  int top = 0;
  for (const char ch : text) {
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n') continue;
    require(ch >= '0' && ch <= '9', ErrorKind::Parse, std::string("coloring digit expected, got '") + ch + "'");
    colors.push_back(static_cast<std::uint8_t>(ch - '0'));
    top = std::max(top, ch - '0');
  }
  return Coloring(r > 0 ? r : std::max(2, top + 1), std::move(colors));
}

Json to_json(const IntSet& s) { return Json(s.to_vector()); }

Json to_json(const ApWitness& ap) {
  return {{"start", ap.start}, {"difference", ap.difference}, {"length", ap.length}};
}

Json to_json(const Gap& q) {
  Json ranges = Json::array();
  for (const auto& r : q.ranges()) ranges.push_back({r.lower, r.upper});
  return {{"base", q.base()}, {"differences", q.differences()}, {"ranges", ranges}, {"volume", q.volume()}};
}

Json to_json(const Rank2Decomposition& d) {
  static constexpr const char* kNames[6] = {"pos_pos", "pos_neg", "neg_pos", "neg_neg", "d1_axis", "d2_axis"};
  Json parts = Json::array();
  for (std::size_t i = 0; i < 6; ++i) {
    parts.push_back({{"name", kNames[i]}, {"size", d.parts[i].size()}, {"values", to_json(d.parts[i])}});
  }
  return {{"m", d.m}, {"n", d.n}, {"parts", parts}};
}

Json to_json(const CollisionWitness& w) { return {{"x1", w.x1}, {"x2", w.x2}, {"y1", w.y1}, {"y2", w.y2}}; }

Json to_json(const GridSet& g) {
  Json points = Json::array();
  for (const auto& p : g.points()) points.push_back(point_json(p, g.dim()));
  Json out = {{"dim", g.dim()}, {"size", g.size()}};
  out["box"] = g.box() ? Json(*g.box()) : Json(nullptr);
  out["points"] = points;
  return out;
}

Json to_json(const StackDecomposition& s) {
  Json stacks = Json::array();
  for (const auto& st : s.stacks)
    stacks.push_back({{"base", point_json(st.base, s.dim - 1)}, {"size", st.members.size()}, {"dense", st.dense}});
  return {{"dim", s.dim},         {"top_side", s.top_side},       {"base_cells", s.base_cells},
          {"total", s.total},     {"density", s.density},         {"s", s.s},
          {"class_count", s.class_count}, {"dense_mass", s.dense_mass}, {"stacks", stacks}};
}

Json to_json(const DyadicSelection& s, int base_dim) {
  Json bases = Json::array();
  for (const auto& b : s.bases) bases.push_back(point_json(b, base_dim));
  return {{"index", s.index}, {"threshold", s.threshold}, {"covered", s.covered}, {"class_mass", s.class_mass},
          {"bases", bases}};
}

Json to_json(const DenseGapReport& r) {
  Json out = {{"dim", r.dim},
              {"set_size", r.set_size},
              {"m", r.m},
              {"sumset_size", r.sumset_size},
              {"density", r.density},
              {"ratio_log_density", r.ratio_log_density},
              {"ratio_log_size", r.ratio_log_size}};
  out["exact_d1_bound"] = r.exact_d1_bound ? Json(*r.exact_d1_bound) : Json(nullptr);
  out["exact_d1_ratio"] = r.exact_d1_ratio ? Json(*r.exact_d1_ratio) : Json(nullptr);
  out["d1_quadratic_bound_holds"] = r.d1_quadratic_bound_holds ? Json(*r.d1_quadratic_bound_holds) : Json(nullptr);
  return out;
}

Json to_json(const CubeWitness& w) {
  return {{"x0", w.x0}, {"A", to_json(w.generators)}, {"realized", to_json(w.realized)}, {"color", w.color}};
}

Json to_json(const ProbabilityEstimate& p) {
  return {{"probability", p.probability}, {"standard_error", p.standard_error}, {"hits", p.hits},
          {"trials", p.trials},           {"exact", p.exact}};
}

Json to_json(const RamseyResult& r) {
  Json out = {{"kind", std::string(kind_label(r.kind))},
              {"k", r.k},
              {"r", r.r},
              {"n_max", r.n_max},
              {"exact", r.exact},
              {"value", r.value}};
  out["witness"] = r.witness ? coloring_json(*r.witness) : Json(nullptr);
  out["stats"] = {{"search_nodes", r.search_nodes}, {"exhaustion_nodes", r.exhaustion_nodes}};
  return out;
}

Json to_json(const CensusResult& c) {
  Json out = {{"n", c.n}, {"k", c.k}, {"u", c.u}, {"subsets", c.subsets}, {"count", c.count},
              {"log2_bound", c.log2_bound}};
  // JSON has no infinity.
  out["bound"] = std::isfinite(c.bound) ? Json(c.bound) : Json(nullptr);
  out["pass"] = c.pass;
  return out;
}

Json to_json(const ConsistencyReport& c) {
  Json out = {{"k", c.k},
              {"r", c.r},
              {"hilbert", to_json(c.hilbert)},
              {"repeat_free_length", c.repeat_free_length},
              {"vdw_repeat_free", to_json(c.vdw_repeat_free)},
              {"repeat_free_verdict", c.repeat_free_verdict},
              {"literal_length", c.literal_length}};
  out["vdw_literal"] = c.vdw_literal ? to_json(*c.vdw_literal) : Json(nullptr);
  out["literal_verdict"] = c.literal_verdict;
  return out;
}

Json to_json(const GrowthStep& s) {
  return {{"phase", phase_name(s.phase)}, {"a1", s.a1},
          {"a2", s.a2},                   {"b", s.b},
          {"x_before", s.x_before},       {"x_after", s.x_after},
          {"sums_before", s.sums_before}, {"sums_after", s.sums_after},
          {"candidates", s.candidates},   {"score", s.score},
          {"cross_checked", s.cross_checked}};
}

Json to_json(const GrowthTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  return {{"steps", steps},
          {"summary",
           {{"a_size", t.a_size},
            {"small_steps", t.small_steps},
            {"large_steps", t.large_steps},
            {"small_exit", t.small_exit},
            {"x", to_json(t.x)},
            {"final_sums", t.final_sums},
            {"c", t.c}}}};
}

}  // namespace cubeforge
