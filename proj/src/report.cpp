#include "pairgraph/report.hpp"

#include <cmath>
#include <sstream>

#include "pairgraph/errors.hpp"
#include "pairgraph/io.hpp"
#include "pairgraph/rng.hpp"

namespace pairgraph {

PValueKind parse_pvalue_kind(std::string_view tag) {
  if (tag == "asymptotic") return PValueKind::asymptotic;
  if (tag == "permutation") return PValueKind::permutation;
  if (tag == "both") return PValueKind::both;
  throw ValidationError("unknown p-value kind '" + std::string(tag) + "'");
}

std::string_view to_string(PValueKind kind) noexcept {
  switch (kind) {
    case PValueKind::asymptotic: return "asymptotic";
    case PValueKind::permutation: return "permutation";
    case PValueKind::both: return "both";
  }
  return "unknown";
}

TestSelection TestSelection::parse(std::string_view tag) {
  if (tag == "all") return {};
  if (tag == "m") return {true, false, false};
  if (tag == "s") return {false, true, false};
  if (tag == "g") return {false, false, true};
  throw ValidationError("unknown test '" + std::string(tag) + "' (expected m, s, g or all)");
}

std::string TestSelection::tag() const {
  if (mean && scale && generic) return "all";
  std::string out;
  if (mean) out += 'm';
  if (scale) out += 's';
  if (generic) out += 'g';
  return out;
}

bool TestReport::requested_degenerate() const noexcept {
  const auto& s = analysis.stats;
  return (options.tests.mean && s.mean_degenerate()) ||
         (options.tests.scale && s.scale_degenerate()) ||
         (options.tests.generic && s.generic_degenerate());
}

namespace {

TestReport finish(GraphAnalysis analysis, const TestOptions& options, const PairedSample* sample) {
  TestReport r{.n = analysis.index.pairs(),
               .d = sample ? std::optional<std::size_t>(sample->dim()) : std::nullopt,
               .options = options,
               .analysis = std::move(analysis),
               .diagnostics = {},
               .asymptotic = std::nullopt,
               .permutation = std::nullopt,
               .hotelling = std::nullopt,
               .hotelling_error = {}};
  const auto& a = r.analysis;
  r.diagnostics = condition_diagnostics(a.g1, a.index);
  if (options.pvalue != PValueKind::permutation) r.asymptotic = asymptotic_pvalues(a.stats);
  if (options.pvalue != PValueKind::asymptotic) {
    r.permutation = permutation_pvalues(a.index, a.g1, a.moments, a.observed, options.permutation);
  }
  if (options.hotelling) {
    if (!sample) {
      r.hotelling_error = "raw observations are required for Hotelling's T^2";
    } else {
      try {
        r.hotelling = hotelling_paired(*sample);
      } catch (const DimensionError& e) {
        r.hotelling_error = e.what();
      } catch (const SingularCovariance& e) {
        r.hotelling_error = e.what();
      }
    }
  }
  return r;
}

void check_k(int k) {
  if (k < 1) throw ValidationError("k must be a positive integer, got " + std::to_string(k));
}

}  // namespace

TestReport run_test(const PairedSample& sample, const TestOptions& options) {
  check_k(options.k);
  if (options.metric == Metric::precomputed) {
    throw ValidationError("the precomputed metric needs a distance matrix");
  }
  return finish(analyze_sample(sample, options.k, options.metric), options, &sample);
}

TestReport run_test(const DistanceMatrix& dist, const TestOptions& options,
                    const PairedSample* sample) {
  check_k(options.k);
  if (sample && dist.size() != 2 * sample->pairs()) {
    throw ValidationError("distance matrix has " + std::to_string(dist.size()) +
                          " rows but the sample has " + std::to_string(2 * sample->pairs()) +
                          " pooled observations");
  }
  return finish(analyze_distances(dist, options.k), options, sample);
}

namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const TestReport& report) {
  const auto& a = report.analysis;
  const auto& m = a.moments;
  json j;
  j["tool"] = {{"name", "pairgraph"}, {"version", std::string(kVersion)}};
  j["input"] = {{"n", report.n},
                {"d", report.d ? json(*report.d) : json(nullptr)},
                {"k", report.options.k},
                {"metric", std::string(to_string(report.options.metric))},
                {"tests", report.options.tests.tag()},
                {"pvalue", std::string(to_string(report.options.pvalue))}};
  j["graph"] = {{"edges", a.graph.size()},
                {"cross_pair_edges", a.g1.size()},
                {"c1", a.g1.c1()},
                {"c2", a.g1.c2()}};
  j["edge_counts"] = {{"r1", a.observed.r1}, {"r2", a.observed.r2}};
  j["null_moments"] = {{"e_r1", m.e_r1},         {"e_r2", m.e_r1},
                       {"var_r1", m.var_r1},     {"var_r2", m.var_r1},
                       {"cov_r12", m.cov_r12},   {"var_sum", m.var_sum},
                       {"var_diff", m.var_diff}, {"e_sum", m.e_sum()}};
  j["diagnostics"] = {{"sum_ab", report.diagnostics.sum_ab},
                      {"sum_degdiff_sq", report.diagnostics.sum_degdiff_sq},
                      {"q3", report.diagnostics.q3},
                      {"ratio", report.diagnostics.ratio()}};
  const auto& s = a.stats;
  j["statistics"] = {{"z_m", optional_number(s.z_m)},
                     {"z_s", optional_number(s.z_s)},
                     {"z_g", optional_number(s.z_g)},
                     {"degenerate",
                      {{"mean", s.mean_degenerate()},
                       {"scale", s.scale_degenerate()},
                       {"generic", s.generic_degenerate()}}}};
  json p = json::object();
  if (report.asymptotic) {
    p["asymptotic"] = {{"p_m", optional_number(report.asymptotic->p_m)},
                       {"p_s", optional_number(report.asymptotic->p_s)},
                       {"p_g", optional_number(report.asymptotic->p_g)}};
  }
  if (report.permutation) {
    const auto& q = *report.permutation;
    p["permutation"] = {{"p_m", optional_number(q.p_m)},
                        {"p_s", optional_number(q.p_s)},
                        {"p_g", optional_number(q.p_g)},
                        {"mode", std::string(to_string(q.mode))},
                        {"n_permutations", q.n_permutations},
                        {"seed", q.seed},
                        {"strict", q.strict},
                        {"rng", std::string(kRngAlgorithm)}};
  }
  j["pvalues"] = p;
  if (report.options.hotelling) {
    if (report.hotelling) {
      const auto& h = *report.hotelling;
      j["baseline"]["hotelling"] = {
          {"t2", h.t2}, {"f_stat", h.f_stat}, {"df1", h.df1}, {"df2", h.df2}, {"p", h.p}};
    } else {
      j["baseline"]["hotelling"] = {{"error", report.hotelling_error}};
    }
  }
  j["seed"] = report.options.permutation.seed;
  return j;
}

namespace {

void dump(const nlohmann::json& v, std::ostringstream& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(key).dump() << ": ";
        dump(item, out, depth + 1);
      }
      out << '\n' << close_pad << '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        dump(v[i], out, depth + 1);
      }
      out << '\n' << close_pad << ']';
      return;
    }
    case json::value_t::number_float: {
      const double d = v.get<double>();
      out << (std::isfinite(d) ? format_double(d) : "null");
      return;
    }
    default: out << v.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& value) {
  std::ostringstream out;
  dump(value, out, 0);
  out << '\n';
  return out.str();
}

void write_report_csv(std::ostream& out, const TestReport& report) {
  const auto& s = report.analysis.stats;
  auto cell = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  out << "test,statistic,p_asymptotic,p_permutation\n";
  const struct {
    bool wanted;
    const char* name;
    std::optional<double> stat;
    std::optional<double> asym;
    std::optional<double> perm;
  } rows[] = {
      {report.options.tests.mean, "m", s.z_m, report.asymptotic ? report.asymptotic->p_m : std::nullopt,
       report.permutation ? report.permutation->p_m : std::nullopt},
      {report.options.tests.scale, "s", s.z_s,
       report.asymptotic ? report.asymptotic->p_s : std::nullopt,
       report.permutation ? report.permutation->p_s : std::nullopt},
      {report.options.tests.generic, "g", s.z_g,
       report.asymptotic ? report.asymptotic->p_g : std::nullopt,
       report.permutation ? report.permutation->p_g : std::nullopt},
  };
  for (const auto& r : rows) {
    if (!r.wanted) continue;
    out << r.name << ',' << cell(r.stat) << ',' << cell(r.asym) << ',' << cell(r.perm) << '\n';
  }
  if (report.hotelling) {
    out << "ht," << format_double(report.hotelling->t2) << ',' << format_double(report.hotelling->p)
        << ",\n";
  }
}

}  // namespace pairgraph
