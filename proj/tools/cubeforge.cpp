// cubeforge: command-line front end for the cubeforge library.
//
// Exit codes: 0 success, 1 domain error (or a failing verify-bounds run),
// 2 budget or timeout, 3 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "cubeforge/coloring.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/gap.hpp"
#include "cubeforge/grid.hpp"
#include "cubeforge/io.hpp"
#include "cubeforge/ramsey.hpp"
#include "cubeforge/sidon.hpp"
#include "cubeforge/sumset.hpp"
#include "cubeforge/verify.hpp"

using namespace cubeforge;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Result of one subcommand. `rows_key`, when set, names the array of flat
// objects that --format csv prints as a table.
struct Output {
  Json json;
  std::string rows_key;
  int exit_code = 0;
  std::uint64_t nodes = 0;
};

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string to_csv(const Output& out) {
  std::ostringstream os;
  if (!out.rows_key.empty() && out.json.contains(out.rows_key) && out.json[out.rows_key].is_array() &&
      !out.json[out.rows_key].empty()) {
    const Json& rows = out.json[out.rows_key];
    if (rows.front().is_object()) {
      bool first = true;
      for (const auto& [key, value] : rows.front().items()) {
        os << (first ? "" : ",") << key;
        first = false;
      }
      os << '\n';
      for (const auto& row : rows) {
        first = true;
        for (const auto& [key, value] : row.items()) {
          os << (first ? "" : ",") << csv_cell(value);
          first = false;
        }
        os << '\n';
      }
    } else {
      os << out.rows_key << '\n';
      for (const auto& v : rows) os << csv_cell(v) << '\n';
    }
    return os.str();
  }
  os << "field,value\n";
  for (const auto& [key, value] : out.json.items()) os << key << ',' << csv_cell(value) << '\n';
  return os.str();
}

IntSet load_set(const std::string& inline_set, const std::string& path) {
  if (!inline_set.empty() && !path.empty()) throw UsageError("give either --set or --input, not both");
  if (!inline_set.empty()) return parse_set(inline_set);
  if (!path.empty()) return parse_set(read_text_file(path));
  throw UsageError("a set is required (--set or --input)");
}

std::vector<std::int64_t> parse_list(const std::string& text) { return parse_set(text).to_vector(); }

std::uint64_t parse_seed(const std::string& text) {
  if (text == "auto") {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw UsageError("bad --seed '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad --seed '" + text + "'");
  }
}

Json option_values(const CLI::App* sub) {
  Json params = Json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name(false, true);
    if (name.empty() || name == "--help" || name == "-h") continue;
    std::string key = opt->get_lnames().empty() ? opt->get_snames().front() : opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      params[key] = res.size() == 1 ? Json(res.front()) : Json(res);
    } else if (!opt->get_default_str().empty()) {
      params[key] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubeforge: restricted sumsets, GAPs, colorings, Ramsey-type numbers and Sidon growth"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string manifest_path;
  std::string seed_text = std::to_string(kDefaultSeed);
  unsigned threads = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_option("--manifest", manifest_path, "Write the run manifest here instead of stderr");
  app.add_option("--seed", seed_text, "Seed (integer or 'auto')")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1U, 256U))->capture_default_str();

  std::uint64_t seed = 0;
  Limits limits;
  std::function<Output()> run;

  // sumset
  auto* sumset_cmd = app.add_subcommand("sumset", "One-dimensional sumset kernels");
  std::string set_text, set_file, sumset_op = "restricted";
  std::int64_t ell = 1, mult = 1;
  sumset_cmd->add_option("--set", set_text, "Inline set, e.g. \"1,2,4\"");
  sumset_cmd->add_option("--input", set_file, "Set file");
  sumset_cmd->add_option("--op", sumset_op, "Operation")
      ->check(CLI::IsMember({"restricted", "ell", "mfold", "mfold-restricted", "chain", "longest-ap", "sidon"}))
      ->capture_default_str();
  sumset_cmd->add_option("--ell", ell, "Summand count for --op ell")->capture_default_str();
  sumset_cmd->add_option("-m", mult, "Fold count for --op mfold and mfold-restricted")->capture_default_str();
  sumset_cmd->callback([&] {
    run = [&] {
      const IntSet a = load_set(set_text, set_file);
      Json j = {{"op", sumset_op}, {"input", to_json(a)}};
      if (sumset_op == "sidon") {
        j["is_sidon"] = is_sidon(a);
        return Output{j};
      }
      if (sumset_op == "longest-ap") {
        j["ap"] = to_json(longest_ap_in(a));
        return Output{j};
      }
      if (sumset_op == "ell") j["ell"] = ell;
      if (sumset_op.starts_with("mfold")) j["m"] = mult;
      std::vector<std::int64_t> values;
      if (sumset_op == "restricted") values = restricted_sumset(a, limits).to_vector();
      else if (sumset_op == "ell") values = ell_fold_sums(a, ell, limits).to_vector();
      else if (sumset_op == "mfold") values = m_fold_sumset(a, mult, limits).to_vector();
      else if (sumset_op == "mfold-restricted") values = m_fold_restricted_sumset(a, mult, limits).to_vector();
      else values = chain_witness(a);
      j["size"] = values.size();
      j["values"] = values;
      return Output{j, "values"};
    };
  });

  // gap
  auto* gap_cmd = app.add_subcommand("gap", "Generalized arithmetic progressions");
  std::string gap_text, gap_file, gap_op = "enumerate";
  std::int64_t collision_k = 1;
  gap_cmd->add_option("--gap", gap_text, "Descriptor 'a; d1,d2; m1..M1, m2..M2'");
  gap_cmd->add_option("--input", gap_file, "Descriptor file");
  gap_cmd->add_option("--op", gap_op, "Operation")
      ->check(CLI::IsMember({"enumerate", "proper", "decompose", "containing-ap", "collision"}))
      ->capture_default_str();
  gap_cmd->add_option("-k", collision_k, "Range multiplier for --op collision")->capture_default_str();
  gap_cmd->callback([&] {
    run = [&] {
      if (gap_text.empty() == gap_file.empty()) throw UsageError("give exactly one of --gap or --input");
      const Gap q = parse_gap(gap_text.empty() ? read_text_file(gap_file) : gap_text);
      Json j = {{"op", gap_op}, {"gap", to_json(q)}};
      if (gap_op == "enumerate") {
        const IntSet v = enumerate_gap(q, limits);
        j["size"] = v.size();
        j["values"] = to_json(v);
        return Output{j, "values"};
      }
      if (gap_op == "proper") j["proper"] = is_proper(q, limits);
      else if (gap_op == "decompose") j["decomposition"] = to_json(decompose_rank2(q, limits));
      else if (gap_op == "containing-ap") j["ap"] = to_json(containing_ap(q));
      else {
        require(q.rank() == 2 && q.is_centered(), ErrorKind::Shape, "collision needs a centered rank-2 GAP");
        const auto w = find_collision(q.differences()[0], q.differences()[1], q.ranges()[0].upper,
                                      q.ranges()[1].upper, collision_k);
        j["collision"] = w ? to_json(*w) : Json(nullptr);
      }
      return Output{j};
    };
  });

  // grid
  auto* grid_cmd = app.add_subcommand("grid", "Sumsets and stack structure of subsets of Z^d");
  std::string grid_file, box_text, grid_op = "sumset";
  std::int64_t grid_m = 1;
  grid_cmd->add_option("--input", grid_file, "Grid set file");
  grid_cmd->add_option("--box", box_text, "Use the full box N1,N2,... as the set");
  grid_cmd->add_option("--op", grid_op, "Operation")
      ->check(CLI::IsMember({"sumset", "stacks", "dyadic", "embed", "dense-gap"}))
      ->capture_default_str();
  grid_cmd->add_option("-m", grid_m, "Multiplicity for sumset and dense-gap")->capture_default_str();
  grid_cmd->callback([&] {
    run = [&] {
      if (grid_file.empty() == box_text.empty()) throw UsageError("give exactly one of --input or --box");
      const GridSet a = grid_file.empty() ? GridSet::full_box(parse_list(box_text)) : parse_grid(read_text_file(grid_file));
      Json j = {{"op", grid_op}, {"dim", a.dim()}, {"set_size", a.size()}};
      if (grid_op == "sumset") {
        const GridSet s = grid_restricted_sumset(a, grid_m, limits);
        j["m"] = grid_m;
        j["size"] = s.size();
        j["points"] = to_json(s)["points"];
        return Output{j, "points"};
      }
      if (grid_op == "stacks") {
        j["decomposition"] = to_json(stack_partition(a));
      } else if (grid_op == "dyadic") {
        const auto dec = stack_partition(a);
        j["selection"] = to_json(dyadic_select(dec), a.dim() - 1);
      } else if (grid_op == "embed") {
        const GridSet e = freiman_embed_set(a);
        j["points"] = to_json(e)["points"];
        return Output{j, "points"};
      } else {
        j["report"] = to_json(verify_dense_gap_bound(a, grid_m, limits));
      }
      return Output{j};
    };
  });

  // coloring
  auto* col_cmd = app.add_subcommand("coloring", "Colorings, monochromatic APs and cubes");
  std::string col_op = "ap-free", col_text, col_file, col_text2;
  std::int64_t col_n = 8, col_k = 3;
  int col_r = 2;
  std::uint64_t col_cap = kUnboundedCap;
  col_cmd->add_option("--op", col_op, "Operation")
      ->check(CLI::IsMember({"ap-free", "mono-ap", "mono-cube", "product", "random"}))
      ->capture_default_str();
  col_cmd->add_option("-n", col_n, "Length for ap-free and random")->capture_default_str();
  col_cmd->add_option("-k", col_k, "AP length or cube dimension")->capture_default_str();
  col_cmd->add_option("-r", col_r, "Number of colors")->capture_default_str();
  col_cmd->add_option("--coloring", col_text, "Coloring digits");
  col_cmd->add_option("--input", col_file, "Coloring file");
  col_cmd->add_option("--second", col_text2, "Second factor for --op product");
  col_cmd->add_option("--cap", col_cap, "Skip cubes with more subset sums than this");
  col_cmd->callback([&] {
    run = [&] {
      auto given = [&]() -> Coloring {
        if (col_text.empty() == col_file.empty()) throw UsageError("give exactly one of --coloring or --input");
        return parse_coloring(col_text.empty() ? read_text_file(col_file) : col_text);
      };
      Json j = {{"op", col_op}};
      SearchStats stats;
      if (col_op == "ap-free") {
        const auto c = find_ap_free_coloring(col_n, col_k, col_r, limits, &stats);
        j.update({{"n", col_n}, {"k", col_k}, {"r", col_r}, {"found", c.has_value()}});
        j["coloring"] = c ? Json(c->digits()) : Json(nullptr);
        j["nodes"] = stats.nodes;
      } else if (col_op == "mono-ap") {
        const Coloring c = given();
        const auto ap = find_mono_ap(c, col_k);
        j["ap"] = ap ? to_json(*ap) : Json(nullptr);
      } else if (col_op == "mono-cube") {
        const Coloring c = given();
        const auto w = find_mono_cube(c, col_k, col_cap, limits, &stats);
        j["cube"] = w ? to_json(*w) : Json(nullptr);
        j["nodes"] = stats.nodes;
      } else if (col_op == "product") {
        if (col_text2.empty()) throw UsageError("--op product needs --second");
        const Coloring c = product_coloring(given(), parse_coloring(col_text2));
        j["r"] = c.r();
        j["coloring"] = c.r() <= 10 ? Json(c.digits()) : Json(std::vector<int>(c.colors().begin(), c.colors().end()));
      } else {
        j["seed"] = seed;
        j["coloring"] = random_coloring(col_n, col_r, seed).digits();
      }
      return Output{j, {}, 0, stats.nodes};
    };
  });

  // vdw / hilbert
  std::int64_t rk = 3, rnmax = 40, vdw_nmax_for_check = 40;
  int rr = 2;
  std::string baseline_file;
  bool against_vdw = false;
  auto add_ramsey = [&](const char* name, const char* help, RamseyKind kind) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("-k", rk, "AP length or cube dimension")->required();
    cmd->add_option("-r", rr, "Number of colors")->capture_default_str();
    cmd->add_option("--nmax", rnmax, "Largest n searched")->capture_default_str();
    cmd->add_option("--baselines", baseline_file, "Compare an exact value with this baseline file");
    if (kind == RamseyKind::Hilbert) {
      cmd->add_flag("--against-vdw", against_vdw, "Also compare h(k,r) with van der Waerden numbers");
      cmd->add_option("--vdw-nmax", vdw_nmax_for_check, "Largest n for the comparison searches")->capture_default_str();
    }
    cmd->callback([&, kind] {
      run = [&, kind] {
        if (kind == RamseyKind::Hilbert && against_vdw) {
          const auto rep = consistency_h_le_w(rk, rr, rnmax, vdw_nmax_for_check, limits);
          return Output{to_json(rep), {}, 0, rep.hilbert.search_nodes + rep.hilbert.exhaustion_nodes};
        }
        const RamseyResult res = kind == RamseyKind::VanDerWaerden ? vdw_number(rk, rr, rnmax, limits)
                                                                   : hilbert_number(rk, rr, rnmax, limits);
        Json j = to_json(res);
        int code = 0;
        if (!baseline_file.empty()) {
          const auto entries = parse_baselines(read_text_file(baseline_file));
          const auto pinned = lookup_baseline(entries, kind, rk, rr);
          j["baseline"] = pinned ? Json(*pinned) : Json(nullptr);
          const bool drift = pinned && res.exact && *pinned != res.value;
          j["baseline_drift"] = drift;
          if (drift) code = 1;
        }
        return Output{j, {}, code, res.search_nodes + res.exhaustion_nodes};
      };
    });
  };
  add_ramsey("vdw", "Exact van der Waerden numbers W(k, r)", RamseyKind::VanDerWaerden);
  add_ramsey("hilbert", "Exact Hilbert cube numbers h(k, r)", RamseyKind::Hilbert);

  // census
  auto* census_cmd = app.add_subcommand("census", "Count k-subsets of [n] with few subset sums");
  std::int64_t cn = 10, ck = 3, cu = 7;
  census_cmd->add_option("-n", cn, "Ground set [n]")->required();
  census_cmd->add_option("-k", ck, "Subset size")->required();
  census_cmd->add_option("-u", cu, "Sumset size threshold")->required();
  census_cmd->callback([&] { run = [&] { return Output{to_json(census_small_sumsets(cn, ck, cu, limits))}; }; });

  // sidon
  auto* sidon_cmd = app.add_subcommand("sidon", "Construct Sidon sets");
  std::string construct;
  sidon_cmd->add_option("--construct", construct, "et:p=<prime> or mc:n=<count>")->required();
  sidon_cmd->callback([&] {
    run = [&] {
      IntSet a;
      if (construct.rfind("et:p=", 0) == 0) a = erdos_turan_sidon(std::stoll(construct.substr(5)));
      else if (construct.rfind("mc:n=", 0) == 0) a = mian_chowla(std::stoll(construct.substr(5)));
      else throw UsageError("--construct must be et:p=<prime> or mc:n=<count>");
      Json j = {{"construct", construct}, {"size", a.size()}, {"is_sidon", is_sidon(a)}, {"values", to_json(a)}};
      return Output{j, "values"};
    };
  });

  // sidon-grow
  auto* grow_cmd = app.add_subcommand("sidon-grow", "Two-phase subset-sum growth inside a Sidon set");
  std::string grow_set, grow_file, trace_path;
  grow_cmd->add_option("--set", grow_set, "Inline Sidon set");
  grow_cmd->add_option("--input", grow_file, "Sidon set file");
  grow_cmd->add_option("--trace", trace_path, "Write the full trace JSON here");
  grow_cmd->callback([&] {
    run = [&] {
      const GrowthTrace trace = sidon_cubic_lowerbound(load_set(grow_set, grow_file), limits);
      Json full = to_json(trace);
      if (!trace_path.empty()) {
        std::ofstream out(trace_path);
        require(static_cast<bool>(out), ErrorKind::Parse, "cannot write '" + trace_path + "'");
        out << full.dump(2) << '\n';
      }
      return Output{full, "steps"};
    };
  });

  // montecarlo
  auto* mc_cmd = app.add_subcommand("montecarlo", "Probability that a random 2-coloring has a monochromatic cube");
  std::int64_t mc_n = 4, mc_k = 2;
  std::uint64_t mc_trials = 10000;
  bool mc_exact = false;
  mc_cmd->add_option("-n", mc_n, "Length")->required();
  mc_cmd->add_option("-k", mc_k, "Cube dimension")->required();
  mc_cmd->add_option("--trials", mc_trials, "Sampled colorings")->capture_default_str();
  mc_cmd->add_flag("--exact", mc_exact, "Enumerate all 2^n colorings instead of sampling");
  mc_cmd->callback([&] {
    run = [&] {
      const auto est = mc_exact ? exact_mono_cube_probability(mc_n, mc_k, limits)
                                : estimate_mono_cube_probability(mc_n, mc_k, mc_trials, seed, limits);
      Json j = {{"n", mc_n}, {"k", mc_k}};
      j.update(to_json(est));
      return Output{j};
    };
  });

  // verify-bounds
  auto* vb_cmd = app.add_subcommand("verify-bounds", "Run the bound-checking suites");
  std::string config_file;
  vb_cmd->add_option("--config", config_file, "JSON config {\"suites\": {name: {params}}}; default runs all but freiman");
  vb_cmd->callback([&] {
    run = [&] {
      Json config = default_verify_config();
      if (!config_file.empty()) {
        try {
          config = Json::parse(read_text_file(config_file));
        } catch (const nlohmann::json::parse_error& e) {
          fail(ErrorKind::Parse, std::string("config is not valid JSON: ") + e.what());
        }
      }
      const VerifyReport rep = verify_bounds(config, limits);
      return Output{to_json(rep), "suites", rep.pass() ? 0 : 1};
    };
  });

  const auto started = std::chrono::steady_clock::now();
  try {
    app.parse(argc, argv);
    seed = parse_seed(seed_text);
    limits = Limits::from_env();
    limits.threads = threads;
    Output out = run();

    std::cout << (format == "csv" ? to_csv(out) : out.json.dump(2) + "\n");

    const CLI::App* sub = app.get_subcommands().front();
    Json params = option_values(sub);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    Json manifest = {{"subcommand", sub->get_name()},
                     {"params", params},
                     {"format", format},
                     {"seed", seed},
                     {"prng", kPrngId},
                     {"version", CUBEFORGE_VERSION},
                     {"wall_seconds", wall},
                     {"budget",
                      {{"node_budget", limits.node_budget},
                       {"nodes_used", out.nodes},
                       {"window_cells", limits.window_cells},
                       {"enumeration_cap", limits.enumeration_cap},
                       {"threads", limits.threads}}}};
    if (manifest_path.empty()) {
      std::cerr << manifest.dump() << '\n';
    } else {
      std::ofstream mf(manifest_path);
      if (!mf) {
        std::cerr << "error: cannot write manifest '" << manifest_path << "'\n";
        return 1;
      }
      mf << manifest.dump(2) << '\n';
    }
    return out.exit_code;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help();
    return 3;
  } catch (const Error& e) {
    std::cerr << "error [" << kind_name(e.kind()) << "]: " << e.what() << '\n';
    return is_resource_limit(e.kind()) ? 2 : 1;
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
