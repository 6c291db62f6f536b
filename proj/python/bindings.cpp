#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "pairgraph/analysis.hpp"
#include "pairgraph/baselines.hpp"
#include "pairgraph/errors.hpp"
#include "pairgraph/oracle.hpp"
#include "pairgraph/report.hpp"
#include "pairgraph/simulation.hpp"

namespace py = pybind11;
using namespace pairgraph;

namespace {

py::object to_python(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: return py::none();
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(to_python(v));
      return out;
    }
    case nlohmann::json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = to_python(v);
      return out;
    }
    default: return py::none();
  }
}

SimilarityGraph graph_from(std::size_t pairs, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (auto [a, b] : edges) out.push_back(Edge::make(a, b));
  return SimilarityGraph(2 * pairs, std::move(out));
}

py::dict moments_dict(const NullMoments& m) {
  py::dict d;
  d["edge_count"] = m.edge_count;
  d["structure_sum"] = m.structure_sum;
  d["degree_diff_sq"] = m.degree_diff_sq;
  d["e_r1"] = m.e_r1;
  d["var_r1"] = m.var_r1;
  d["cov_r12"] = m.cov_r12;
  d["var_sum"] = m.var_sum;
  d["var_diff"] = m.var_diff;
  return d;
}

}  // namespace

PYBIND11_MODULE(pairgraph, m) {
  m.doc() = "Graph-based two-sample tests for multivariate paired data";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<ValidationError> validation(m, "ValidationError", PyExc_ValueError);
  static py::exception<DegenerateNullError> degenerate(m, "DegenerateNullError", error.ptr());
  static py::exception<DisconnectedError> disconnected(m, "DisconnectedError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation.ptr(), e.what());
    } catch (const DegenerateNullError& e) {
      PyErr_SetString(degenerate.ptr(), e.what());
    } catch (const DisconnectedError& e) {
      PyErr_SetString(disconnected.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  m.def(
      "test",
      [](const Matrix& x, const Matrix& y, int k, const std::string& metric, const std::string& tests,
         const std::string& pvalue, std::uint64_t n_perm, std::uint64_t seed, bool exact,
         std::size_t exact_threshold, bool strict, bool baseline_ht) {
        TestOptions o;
        if (k < 1) throw ValidationError("k must be a positive integer");
        o.k = k;
        o.metric = parse_metric(metric);
        o.tests = TestSelection::parse(tests);
        o.pvalue = parse_pvalue_kind(pvalue);
        o.hotelling = baseline_ht;
        o.permutation.n_perm = n_perm;
        o.permutation.seed = seed;
        o.permutation.strategy = exact ? PermutationStrategy::exact : PermutationStrategy::automatic;
        o.permutation.exact_threshold = exact_threshold;
        o.permutation.strict = strict;
        TestReport report = [&] {
          py::gil_scoped_release release;
          return run_test(PairedSample(x, y), o);
        }();
        return to_python(to_json(report));
      },
      py::arg("x"), py::arg("y"), py::arg("k") = 5, py::arg("metric") = "euclidean",
      py::arg("tests") = "all", py::arg("pvalue") = "asymptotic", py::arg("n_perm") = 10000,
      py::arg("seed") = 0, py::arg("exact") = false, py::arg("exact_threshold") = 20,
      py::arg("strict") = false, py::arg("baseline_ht") = false,
      "Run the paired mean, scale and generic tests on n x d arrays x and y.\n"
      "Returns the same report as the command-line tool, as a dict.");

  m.def(
      "kmst",
      [](const Matrix& distances, int k) {
        const auto g = build_kmst(DistanceMatrix::precomputed(distances), k);
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
        return out;
      },
      py::arg("distances"), py::arg("k"), "Edges (0-based) of k successive MSTs.");

  m.def(
      "null_moments",
      [](std::size_t pairs, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        const PooledIndex index(pairs);
        return moments_dict(null_moments(extract_g1(graph_from(pairs, edges), index), index));
      },
      py::arg("pairs"), py::arg("edges"),
      "Exact permutation moments of (R1, R2) for a graph on 2 * pairs nodes.\n"
      "Node i < pairs is x row i, node pairs + i is y row i.");

  m.def(
      "statistics",
      [](std::size_t pairs, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        const auto a = analyze_graph(graph_from(pairs, edges), PooledIndex(pairs));
        py::dict d;
        d["r1"] = a.observed.r1;
        d["r2"] = a.observed.r2;
        d["z_m"] = a.stats.z_m;
        d["z_s"] = a.stats.z_s;
        d["z_g"] = a.stats.z_g;
        return d;
      },
      py::arg("pairs"), py::arg("edges"), "Observed counts and statistics for a hand-built graph.");

  m.def(
      "hotelling",
      [](const Matrix& x, const Matrix& y) {
        const auto h = hotelling_paired(PairedSample(x, y));
        py::dict d;
        d["t2"] = h.t2;
        d["f_stat"] = h.f_stat;
        d["df1"] = h.df1;
        d["df2"] = h.df2;
        d["p"] = h.p;
        return d;
      },
      py::arg("x"), py::arg("y"), "Paired Hotelling's T^2 on the differences x - y.");

  m.def(
      "paired_t",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto r = paired_t_test(x, y);
        return py::make_tuple(r.t, r.p);
      },
      py::arg("x"), py::arg("y"), "Two-sided paired t-test; returns (t, p).");

  m.def(
      "bonferroni",
      [](const std::vector<double>& p, double alpha) { return bonferroni(p, alpha); },
      py::arg("pvalues"), py::arg("alpha") = 0.05);

  m.def(
      "generate",
      [](const std::string& family, std::size_t n, std::size_t d, double mean_shift, double gamma1,
         double gamma2, double gamma12, std::uint64_t seed) {
        const auto s = generate(
            GeneratorSpec::exchangeable(parse_family(family), n, d, mean_shift, gamma1, gamma2, gamma12),
            seed);
        return py::make_tuple(s.x(), s.y());
      },
      py::arg("family"), py::arg("n"), py::arg("d"), py::arg("mean_shift") = 0.0,
      py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0, py::arg("gamma12") = 0.0,
      py::arg("seed") = 0, "Draw (x, y) from the exchangeable simulation design.");

  m.def(
      "oracle",
      [](std::size_t instances, std::uint64_t seed) {
        OracleOptions o;
        o.instances = instances;
        o.seed = seed;
        const auto s = run_oracle(o);
        py::dict d;
        d["instances"] = s.instances;
        d["nondegenerate"] = s.nondegenerate;
        d["max_moment_error"] = s.max_moment_error;
        d["max_identity_residual"] = s.max_identity_residual;
        d["max_correlation"] = s.max_correlation;
        d["census_mismatches"] = s.census_mismatches;
        d["passed"] = s.passed();
        return d;
      },
      py::arg("instances") = 200, py::arg("seed") = 0,
      "Compare closed-form moments with exhaustive enumeration on random instances.");
}
