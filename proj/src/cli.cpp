#include "pairgraph/cli.hpp"

#include <fstream>
#include <random>

#include "CLI11.hpp"

#include "pairgraph/errors.hpp"
#include "pairgraph/io.hpp"
#include "pairgraph/oracle.hpp"
#include "pairgraph/report.hpp"
#include "pairgraph/scenario.hpp"

namespace pairgraph {

namespace {

std::uint64_t draw_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  return in;
}

struct TestArgs {
  std::string input;
  std::string metric = "euclidean";
  std::string dist_matrix;
  int k = 5;
  std::string test = "all";
  std::string pvalue = "asymptotic";
  std::uint64_t n_perm = 10000;
  bool exact = false;
  std::size_t exact_threshold = 20;
  bool strict = false;
  bool baseline_ht = false;
  std::uint64_t seed = 0;
  std::string output = "json";
};

int cmd_test(const TestArgs& a, bool seed_given, std::ostream& out, std::ostream& err) {
  TestOptions options;
  options.k = a.k;
  options.metric = parse_metric(a.metric);
  options.tests = TestSelection::parse(a.test);
  options.pvalue = parse_pvalue_kind(a.pvalue);
  options.hotelling = a.baseline_ht;
  options.permutation.n_perm = a.n_perm;
  options.permutation.strategy = a.exact ? PermutationStrategy::exact : PermutationStrategy::automatic;
  options.permutation.exact_threshold = a.exact_threshold;
  options.permutation.strict = a.strict;
  options.permutation.seed = seed_given ? a.seed : draw_seed();
  if (options.k < 1) throw ValidationError("--k must be a positive integer");
  if (a.n_perm < 1) throw ValidationError("--n-perm must be a positive integer");
  if (a.output != "json" && a.output != "csv") {
    throw ValidationError("--output must be json or csv");
  }

  std::optional<PairedSample> sample;
  if (!a.input.empty()) {
    auto in = open_input(a.input);
    sample.emplace(read_paired_csv(in));
  }

  TestReport report = [&] {
    if (options.metric == Metric::precomputed) {
      if (a.dist_matrix.empty()) throw ValidationError("--metric precomputed needs --dist-matrix");
      auto in = open_input(a.dist_matrix);
      const auto dist = read_distance_csv(in);
      return run_test(dist, options, sample ? &*sample : nullptr);
    }
    if (!a.dist_matrix.empty()) {
      throw ValidationError("--dist-matrix is only valid with --metric precomputed");
    }
    if (!sample) throw ValidationError("--input is required");
    return run_test(*sample, options);
  }();

  if (a.output == "json") {
    out << dump_json(to_json(report));
  } else {
    write_report_csv(out, report);
  }
  if (report.requested_degenerate()) {
    err << "error: a requested statistic is undefined because its null variance is zero; "
           "increase k to enrich the similarity graph\n";
    return kExitDegenerate;
  }
  return kExitOk;
}

int cmd_simulate(const std::string& path, bool seed_given, std::uint64_t seed, std::ostream& out) {
  auto in = open_input(path);
  const auto scenarios = read_scenarios(in);
  std::ostringstream buffer;
  write_study_csv_header(buffer);
  for (const auto& s : scenarios) {
    const std::uint64_t used = seed_given ? seed : s.seed ? *s.seed : draw_seed();
    write_study_csv_rows(buffer, s, run_scenario(s, used));
  }
  out << buffer.str();
  return kExitOk;
}

int cmd_oracle(OracleOptions options, bool seed_given, std::ostream& out) {
  if (!seed_given) options.seed = draw_seed();
  const auto s = run_oracle(options);
  constexpr double tolerance = 1e-9;
  const nlohmann::json j = {
      {"instances", s.instances},
      {"kmst_instances", s.kmst_instances},
      {"nondegenerate", s.nondegenerate},
      {"max_moment_error", s.max_moment_error},
      {"max_symmetry_error", s.max_symmetry_error},
      {"max_identity_residual", s.max_identity_residual},
      {"max_standardization_error", s.max_standardization_error},
      {"max_correlation", s.max_correlation},
      {"census_mismatches", s.census_mismatches},
      {"tolerance", tolerance},
      {"passed", s.passed(tolerance)},
      {"seed", options.seed},
  };
  out << dump_json(j);
  return s.passed(tolerance) ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-based two-sample tests for multivariate paired data", "pairgraph"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  TestArgs t;
  auto* test = app.add_subcommand("test", "Run the paired graph tests on a CSV file");
  test->add_option("--input", t.input, "CSV with header x1..xd,y1..yd, one row per pair");
  test->add_option("--metric", t.metric, "euclidean, manhattan or precomputed")
      ->check(CLI::IsMember({"euclidean", "manhattan", "precomputed"}));
  test->add_option("--dist-matrix", t.dist_matrix, "N x N pooled distance CSV (precomputed metric)");
  test->add_option("--k", t.k, "Number of successive MSTs in the similarity graph");
  test->add_option("--test", t.test, "m, s, g or all")->check(CLI::IsMember({"m", "s", "g", "all"}));
  test->add_option("--pvalue", t.pvalue, "asymptotic, permutation or both")
      ->check(CLI::IsMember({"asymptotic", "permutation", "both"}));
  test->add_option("--n-perm", t.n_perm, "Monte Carlo permutations");
  test->add_flag("--exact", t.exact, "Force exhaustive enumeration of all 2^n swaps");
  test->add_option("--exact-threshold", t.exact_threshold,
                   "Largest n enumerated exhaustively (default 20)");
  test->add_flag("--strict", t.strict, "Count only permutations strictly above the observed value");
  test->add_flag("--baseline-ht", t.baseline_ht, "Also run paired Hotelling's T^2");
  auto* test_seed = test->add_option("--seed", t.seed, "Random seed (drawn and reported if absent)");
  test->add_option("--output", t.output, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string scenario_path;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Run size/power studies from a scenario file");
  simulate->add_option("scenario", scenario_path, "Scenario file")->required();
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Override the scenario seeds");

  OracleOptions o;
  auto* oracle = app.add_subcommand("oracle", "Check closed-form moments against enumeration");
  oracle->add_option("--instances", o.instances, "Random instances (default 200)");
  oracle->add_option("--n-min", o.n_min, "Smallest pair count (default 2)");
  oracle->add_option("--n-max", o.n_max, "Largest pair count (default 10)");
  oracle->add_option("--d-min", o.d_min, "Smallest dimension (default 1)");
  oracle->add_option("--d-max", o.d_max, "Largest dimension (default 5)");
  oracle->add_option("--k-max", o.k_max, "Largest k for k-MST instances (default 3)");
  oracle->add_option("--exact-threshold", o.exact_threshold, "Largest n enumerated (default 20)");
  auto* oracle_seed = oracle->add_option("--seed", o.seed, "Random seed (drawn if absent)");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("pairgraph");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*test) return cmd_test(t, test_seed->count() > 0, out, err);
    if (*simulate) return cmd_simulate(scenario_path, sim_seed_opt->count() > 0, sim_seed, out);
    if (*oracle) return cmd_oracle(o, oracle_seed->count() > 0, out);
  } catch (const DegenerateNullError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace pairgraph
