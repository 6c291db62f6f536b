#pragma once

// Scenario files for the simulation harness, and CSV output of study results.
//
// A scenario file is INI-style key = value text. Keys before the first
// [section] are defaults; each [section] is one scenario named after it.
// Without sections the file describes a single scenario.
//
//   study        size | power                 (default power)
//   family       normal | t3 | lognormal       (default normal)
//   n, d         pairs and dimension           (required)
//   mean_shift   ||nu1 - nu2||_2, spread evenly over coordinates (default 0)
//   gamma1       Gamma1 = gamma1 * I           (default 1)
//   gamma2       Gamma2 = gamma2 * I           (default 1)
//   gamma12      Gamma12 = gamma12 * I         (default 0)
//   correlation  alternative to gamma12: gamma12 = correlation * sqrt(gamma1 gamma2)
//   k            MST multiplicity              (default 5)
//   replicates   Monte Carlo replicates        (default 1000)
//   seed         64-bit seed                   (drawn when absent)
//   levels       comma-separated nominal levels (default 0.05,0.1)
//   metric       euclidean | manhattan         (default euclidean)
//   hotelling    true | false                  (default true; power studies with d < n)

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pairgraph/simulation.hpp"

namespace pairgraph {

struct Scenario {
  std::string name;
  std::string study = "power";
  GeneratorSpec spec;
  StudyOptions options;
  std::optional<std::uint64_t> seed;
};

/// Throws ValidationError for unknown keys, malformed values or zero replicates.
std::vector<Scenario> read_scenarios(std::istream& in);

StudyResult run_scenario(const Scenario& scenario, std::uint64_t seed);

/// One row per (scenario, test, level).
void write_study_csv_header(std::ostream& out);
void write_study_csv_rows(std::ostream& out, const Scenario& scenario, const StudyResult& result);

}  // namespace pairgraph
