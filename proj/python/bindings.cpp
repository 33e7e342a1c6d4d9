#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubeforge/coloring.hpp"
#include "cubeforge/error.hpp"
#include "cubeforge/gap.hpp"
#include "cubeforge/grid.hpp"
#include "cubeforge/io.hpp"
#include "cubeforge/ramsey.hpp"
#include "cubeforge/sidon.hpp"
#include "cubeforge/sumset.hpp"
#include "cubeforge/verify.hpp"

namespace py = pybind11;
using namespace cubeforge;

namespace {

py::object to_python(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default:
      throw py::type_error("unsupported JSON value");
  }
}

Json from_python(const py::handle& h) {
  if (h.is_none()) return nullptr;
  if (py::isinstance<py::bool_>(h)) return h.cast<bool>();
  if (py::isinstance<py::int_>(h)) return h.cast<std::int64_t>();
  if (py::isinstance<py::float_>(h)) return h.cast<double>();
  if (py::isinstance<py::str>(h)) return h.cast<std::string>();
  if (py::isinstance<py::dict>(h)) {
    Json out = Json::object();
    for (auto [k, v] : h.cast<py::dict>()) out[k.cast<std::string>()] = from_python(v);
    return out;
  }
  if (py::isinstance<py::sequence>(h)) {
    Json out = Json::array();
    for (auto v : h.cast<py::sequence>()) out.push_back(from_python(v));
    return out;
  }
  throw py::type_error("config must be built from dicts, lists, numbers and strings");
}

Limits make_limits(std::optional<std::uint64_t> node_budget, unsigned threads) {
  Limits limits = Limits::from_env();
  if (node_budget) limits.node_budget = *node_budget;
  limits.threads = threads;
  return limits;
}

IntSet to_set(const std::vector<std::int64_t>& values) { return IntSet(values); }

Coloring to_coloring(const std::string& digits, int r) { return parse_coloring(digits, r); }

GridSet to_grid(const std::vector<std::vector<std::int64_t>>& points,
                std::optional<std::vector<std::int64_t>> box) {
  int dim = box ? static_cast<int>(box->size()) : 0;
  std::vector<GridPoint> pts;
  for (const auto& p : points) {
    if (dim == 0) dim = static_cast<int>(p.size());
    require(static_cast<int>(p.size()) == dim, ErrorKind::Shape, "points must share one dimension");
    require(dim <= kMaxGridDim, ErrorKind::Shape, "grid dimension must be at most 4");
    GridPoint g{};
    std::copy(p.begin(), p.end(), g.begin());
    pts.push_back(g);
  }
  require(dim >= 1, ErrorKind::Shape, "give at least one point or a box");
  return GridSet(dim, std::move(pts), std::move(box));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Restricted sumsets, GAPs, colorings and Ramsey-type searches";
  m.attr("__version__") = CUBEFORGE_VERSION;
  m.attr("PRNG_ID") = kPrngId;
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  static py::handle error_type = py::exception<Error>(m, "CubeforgeError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type)(py::str(e.what()));
      exc.attr("kind") = py::str(std::string(kind_name(e.kind())));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    } catch (const InvariantViolation& e) {
      PyErr_SetString(PyExc_AssertionError, e.what());
    }
  });

  // sumsets
  m.def("restricted_sumset", [](const std::vector<std::int64_t>& a) { return restricted_sumset(to_set(a)).to_vector(); },
        py::arg("a"), "All subset sums of a, 0 included.");
  m.def("ell_fold_sums", [](const std::vector<std::int64_t>& a, std::int64_t ell) {
    return ell_fold_sums(to_set(a), ell).to_vector();
  }, py::arg("a"), py::arg("ell"));
  m.def("m_fold_sumset", [](const std::vector<std::int64_t>& s, std::int64_t mult) {
    return m_fold_sumset(to_set(s), mult).to_vector();
  }, py::arg("s"), py::arg("m"));
  m.def("m_fold_restricted_sumset", [](const std::vector<std::int64_t>& a, std::int64_t mult) {
    return m_fold_restricted_sumset(to_set(a), mult).to_vector();
  }, py::arg("a"), py::arg("m"));
  m.def("chain_witness", [](const std::vector<std::int64_t>& a) { return chain_witness(to_set(a)); }, py::arg("a"));
  m.def("longest_ap_in", [](const std::vector<std::int64_t>& s) { return to_python(to_json(longest_ap_in(to_set(s)))); },
        py::arg("s"));
  m.def("is_sidon", [](const std::vector<std::int64_t>& a) { return is_sidon(to_set(a)); }, py::arg("a"));

  // GAPs, described as "a; d1,d2; m1..M1, m2..M2"
  m.def("enumerate_gap", [](const std::string& q) { return enumerate_gap(parse_gap(q)).to_vector(); }, py::arg("gap"));
  m.def("is_proper", [](const std::string& q) { return is_proper(parse_gap(q)); }, py::arg("gap"));
  m.def("decompose_rank2", [](const std::string& q) { return to_python(to_json(decompose_rank2(parse_gap(q)))); },
        py::arg("gap"));
  m.def("containing_ap", [](const std::string& q) { return to_python(to_json(containing_ap(parse_gap(q)))); },
        py::arg("gap"));
  m.def("find_collision", [](std::int64_t d1, std::int64_t d2, std::int64_t mm, std::int64_t n, std::int64_t k) {
    const auto w = find_collision(d1, d2, mm, n, k);
    return w ? to_python(to_json(*w)) : py::none();
  }, py::arg("d1"), py::arg("d2"), py::arg("m"), py::arg("n"), py::arg("k") = 1);

  // grids
  m.def("grid_restricted_sumset",
        [](const std::vector<std::vector<std::int64_t>>& points, std::int64_t mult) {
          const GridSet g = grid_restricted_sumset(to_grid(points, std::nullopt), mult);
          std::vector<std::vector<std::int64_t>> out;
          for (const auto& p : g.points()) out.emplace_back(p.begin(), p.begin() + g.dim());
          return out;
        },
        py::arg("points"), py::arg("m") = 1);
  m.def("stack_partition",
        [](const std::vector<std::vector<std::int64_t>>& points, const std::vector<std::int64_t>& box) {
          return to_python(to_json(stack_partition(to_grid(points, box))));
        },
        py::arg("points"), py::arg("box"));
  m.def("dyadic_select",
        [](const std::vector<std::vector<std::int64_t>>& points, const std::vector<std::int64_t>& box) {
          return to_python(to_json(dyadic_select(stack_partition(to_grid(points, box))),
                                   static_cast<int>(box.size()) - 1));
        },
        py::arg("points"), py::arg("box"));
  m.def("index_walk_witness", [](const std::vector<std::int64_t>& b, std::int64_t mult) {
    return index_walk_witness(to_set(b), mult);
  }, py::arg("b"), py::arg("m"));
  m.def("freiman_embed_box", [](const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& dims) {
    return freiman_embed_box(x, dims);
  }, py::arg("x"), py::arg("dims"));
  m.def("verify_dense_gap_bound",
        [](const std::vector<std::vector<std::int64_t>>& points, const std::vector<std::int64_t>& box,
           std::int64_t mult) { return to_python(to_json(verify_dense_gap_bound(to_grid(points, box), mult))); },
        py::arg("points"), py::arg("box"), py::arg("m") = 1);

  // colorings, passed as digit strings
  m.def("product_coloring", [](const std::string& c1, int r1, const std::string& c2, int r2) {
    return product_coloring(to_coloring(c1, r1), to_coloring(c2, r2)).digits();
  }, py::arg("c1"), py::arg("r1"), py::arg("c2"), py::arg("r2"));
  m.def("find_ap_free_coloring",
        [](std::int64_t n, std::int64_t k, int r, std::optional<std::uint64_t> node_budget, unsigned threads) {
          const Limits limits = make_limits(node_budget, threads);
          std::optional<Coloring> c;
          {
            py::gil_scoped_release release;
            c = find_ap_free_coloring(n, k, r, limits);
          }
          return c ? py::object(py::str(c->digits())) : py::none();
        },
        py::arg("n"), py::arg("k"), py::arg("r"), py::arg("node_budget") = py::none(), py::arg("threads") = 1);
  m.def("find_mono_ap", [](const std::string& c, std::int64_t k) {
    const auto w = find_mono_ap(to_coloring(c, 0), k);
    return w ? to_python(to_json(*w)) : py::none();
  }, py::arg("coloring"), py::arg("k"));
  m.def("find_mono_cube", [](const std::string& c, std::int64_t k) {
    const auto w = find_mono_cube(to_coloring(c, 0), k);
    return w ? to_python(to_json(*w)) : py::none();
  }, py::arg("coloring"), py::arg("k"));
  m.def("random_coloring", [](std::int64_t n, int r, std::uint64_t seed) {
    const Coloring c = random_coloring(n, r, seed);
    return std::vector<int>(c.colors().begin(), c.colors().end());
  }, py::arg("n"), py::arg("r") = 2, py::arg("seed") = kDefaultSeed);
  m.def("mono_cube_probability",
        [](std::int64_t n, std::int64_t k, std::optional<std::uint64_t> trials, std::uint64_t seed) {
          ProbabilityEstimate p;
          {
            py::gil_scoped_release release;
            p = trials ? estimate_mono_cube_probability(n, k, *trials, seed) : exact_mono_cube_probability(n, k);
          }
          return to_python(to_json(p));
        },
        py::arg("n"), py::arg("k"), py::arg("trials") = py::none(), py::arg("seed") = kDefaultSeed,
        "Exact over all 2^n colorings when trials is None, else a seeded estimate.");

  // Ramsey-type numbers
  auto ramsey = [&](const char* name, RamseyResult (*fn)(std::int64_t, int, std::int64_t, const Limits&)) {
    m.def(name,
          [fn](std::int64_t k, int r, std::int64_t n_max, std::optional<std::uint64_t> node_budget, unsigned threads) {
            const Limits limits = make_limits(node_budget, threads);
            RamseyResult res;
            {
              py::gil_scoped_release release;
              res = fn(k, r, n_max, limits);
            }
            return to_python(to_json(res));
          },
          py::arg("k"), py::arg("r") = 2, py::arg("n_max") = 40, py::arg("node_budget") = py::none(),
          py::arg("threads") = 1);
  };
  ramsey("vdw_number", &vdw_number);
  ramsey("hilbert_number", &hilbert_number);
  m.def("census_small_sumsets", [](std::int64_t n, std::int64_t k, std::int64_t u) {
    return to_python(to_json(census_small_sumsets(n, k, u)));
  }, py::arg("n"), py::arg("k"), py::arg("u"));

  // Sidon sets
  m.def("erdos_turan_sidon", [](std::int64_t p) { return erdos_turan_sidon(p).to_vector(); }, py::arg("p"));
  m.def("mian_chowla", [](std::int64_t k) { return mian_chowla(k).to_vector(); }, py::arg("k"));
  m.def("sidon_cubic_lowerbound", [](const std::vector<std::int64_t>& a) {
    return to_python(to_json(sidon_cubic_lowerbound(to_set(a))));
  }, py::arg("a"));

  m.def("verify_bounds",
        [](const py::object& config) {
          const Json cfg = config.is_none() ? default_verify_config() : from_python(config);
          VerifyReport report;
          {
            py::gil_scoped_release release;
            report = verify_bounds(cfg);
          }
          return to_python(to_json(report));
        },
        py::arg("config") = py::none(), "Runs the named suites; None selects the default configuration.");
}
