#pragma once

// Data generators and the Monte Carlo size/power harness.
//
// A pair (X_i, Y_i) is one draw of a 2d-vector with mean (nu1, nu2) and
// covariance Gamma = [[Gamma1, Gamma12], [Gamma12, Gamma2]]:
//   normal     nu + L z
//   t3         nu + (L / sqrt(3)) z / sqrt(w / 3), w ~ chi-square(3); the
//              scale Gamma / 3 makes the covariance equal Gamma
//   lognormal  exp(nu + L z)
// where L L' = Gamma and z is standard normal.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pairgraph/core.hpp"
#include "pairgraph/graph.hpp"
#include "pairgraph/parallel.hpp"
#include "pairgraph/rng.hpp"

namespace pairgraph {

enum class Family { normal, t3, lognormal };

Family parse_family(std::string_view tag);
std::string_view to_string(Family family) noexcept;

struct GeneratorSpec {
  Family family = Family::normal;
  std::size_t n = 0;
  std::size_t d = 0;
  Eigen::VectorXd nu1;
  Eigen::VectorXd nu2;
  Eigen::MatrixXd gamma1;
  Eigen::MatrixXd gamma2;
  Eigen::MatrixXd gamma12;

  /// Scalar-identity blocks with nu2 = 0 and nu1 = delta * 1_d, where
  /// delta = mean_shift / sqrt(d) so that ||nu1 - nu2||_2 = mean_shift.
  static GeneratorSpec exchangeable(Family family, std::size_t n, std::size_t d,
                                    double mean_shift, double var1, double var2, double cov12);

  Eigen::MatrixXd gamma() const;
  Eigen::VectorXd nu() const;
  double mean_shift_norm() const { return (nu1 - nu2).norm(); }
  /// nu1 == nu2 and Gamma1 == Gamma2.
  bool is_null() const;
};

/// Validated spec plus a cached factor of Gamma.
class Generator {
 public:
  /// Throws ValidationError on inconsistent shapes or a Gamma that is not
  /// symmetric positive semi-definite.
  explicit Generator(GeneratorSpec spec);

  const GeneratorSpec& spec() const noexcept { return spec_; }
  PairedSample draw(Xoshiro256StarStar& rng) const;

 private:
  GeneratorSpec spec_;
  Eigen::MatrixXd factor_;  // 2d x 2d, factor_ * factor_' == Gamma
  Eigen::VectorXd nu_;
};

PairedSample generate(const GeneratorSpec& spec, std::uint64_t seed);

struct StudyOptions {
  std::size_t replicates = 1000;
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<double> levels{0.05, 0.1};
  Metric metric = Metric::euclidean;
  bool hotelling = true;  // power studies only, and only when d < n
  unsigned threads = thread_count();
};

/// Rejection tallies for one test ("m", "s", "g" or "ht").
struct TestTally {
  std::string test;
  std::vector<std::size_t> rejections;  // one per level
  std::size_t valid = 0;                // replicates where the p-value existed
  std::size_t degenerate = 0;           // replicates with an undefined statistic

  double proportion(std::size_t level_index) const;
};

struct StudyResult {
  std::string scenario;
  std::string kind;  // "size" or "power"
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  std::vector<double> levels;
  std::vector<TestTally> tests;
  double realized_shift_norm = 0.0;

  const TestTally& tally(std::string_view test) const;
  double proportion(std::string_view test, double level) const;
};

/// Replicate r draws from stream (seed, r), builds the k-MST and rejects at
/// level a when the asymptotic p-value is <= a. Throws ValidationError if the
/// spec is not a null spec.
StudyResult run_size_study(const GeneratorSpec& spec, const StudyOptions& options,
                           std::string scenario = "size");

/// As run_size_study under an alternative; adds Hotelling's T^2 when d < n.
StudyResult run_power_study(const GeneratorSpec& spec, const StudyOptions& options,
                            std::string scenario = "power");

}  // namespace pairgraph
