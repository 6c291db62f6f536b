#pragma once

// End-to-end test runs and their JSON/CSV reports.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "json.hpp"

#include "pairgraph/analysis.hpp"
#include "pairgraph/baselines.hpp"
#include "pairgraph/inference.hpp"

namespace pairgraph {

inline constexpr std::string_view kVersion = "0.1.0";

enum class PValueKind { asymptotic, permutation, both };

PValueKind parse_pvalue_kind(std::string_view tag);
std::string_view to_string(PValueKind kind) noexcept;

/// Which statistics the caller asked for ("m", "s", "g" or "all").
struct TestSelection {
  bool mean = true;
  bool scale = true;
  bool generic = true;

  static TestSelection parse(std::string_view tag);
  std::string tag() const;
};

struct TestOptions {
  int k = 5;
  Metric metric = Metric::euclidean;
  TestSelection tests;
  PValueKind pvalue = PValueKind::asymptotic;
  PermutationOptions permutation;
  bool hotelling = false;
};

struct TestReport {
  std::size_t n = 0;
  std::optional<std::size_t> d;  // unknown when only distances were supplied
  TestOptions options;
  GraphAnalysis analysis;
  ConditionDiagnostics diagnostics;
  std::optional<AsymptoticPValues> asymptotic;
  std::optional<PermutationPValues> permutation;
  std::optional<HotellingReport> hotelling;
  std::string hotelling_error;

  /// True when some requested statistic is undefined.
  bool requested_degenerate() const noexcept;
};

TestReport run_test(const PairedSample& sample, const TestOptions& options);

/// Distances follow the pooled order (x rows, then y rows). `sample`, when
/// given, must match and enables the Hotelling baseline.
TestReport run_test(const DistanceMatrix& dist, const TestOptions& options,
                    const PairedSample* sample = nullptr);

nlohmann::json to_json(const TestReport& report);

/// Sorted keys, two-space indent, doubles with 17 significant digits and
/// non-finite doubles as null.
std::string dump_json(const nlohmann::json& value);

void write_report_csv(std::ostream& out, const TestReport& report);

}  // namespace pairgraph
