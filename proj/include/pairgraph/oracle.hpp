#pragma once

// Brute-force reference for the paired permutation null: enumerate all 2^n
// within-pair swaps and count R1, R2 directly on the full similarity graph.
// Shares no code with the closed-form moments.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pairgraph/core.hpp"
#include "pairgraph/graph.hpp"

namespace pairgraph {

struct EnumeratedMoments {
  double e_r1 = 0.0;
  double e_r2 = 0.0;
  double var_r1 = 0.0;
  double var_r2 = 0.0;
  double cov_r12 = 0.0;
  double var_sum = 0.0;
  double var_diff = 0.0;
};

/// R1 and R2 for every swap mask 0 .. 2^n - 1 (bit i swaps pair i).
struct EnumeratedCounts {
  std::vector<std::int64_t> r1;
  std::vector<std::int64_t> r2;
};

/// Throws ExactTooLarge when n exceeds max_pairs.
EnumeratedCounts enumerate_counts(const SimilarityGraph& graph, const PooledIndex& index,
                                  std::size_t max_pairs = 20);

EnumeratedMoments enumerate_moments(const SimilarityGraph& graph, const PooledIndex& index,
                                    std::size_t max_pairs = 20);

struct OracleOptions {
  std::size_t instances = 200;
  std::size_t n_min = 2;
  std::size_t n_max = 10;
  std::size_t d_min = 1;
  std::size_t d_max = 5;
  int k_max = 3;
  std::uint64_t seed = 0;
  std::size_t exact_threshold = 20;
};

struct OracleSummary {
  std::size_t instances = 0;
  std::size_t kmst_instances = 0;
  std::size_t nondegenerate = 0;
  double max_moment_error = 0.0;      // analytic vs enumerated, all five moments
  double max_symmetry_error = 0.0;    // |E R1 - E R2| and |Var R1 - Var R2| over the enumeration
  double max_identity_residual = 0.0; // |z_g - z_m^2 - z_s^2|
  double max_standardization_error = 0.0;  // |mean z|, |mean z^2 - 1|
  double max_correlation = 0.0;       // |corr(z_m, z_s)| over the exhaustive set
  std::size_t census_mismatches = 0;  // census_q3 != |G1| + 2 C1 - 2 C2

  bool passed(double tolerance = 1e-9) const noexcept;
};

/// Random instances: even-numbered ones are k-MSTs (k in [1, k_max]) on
/// Gaussian data, odd-numbered ones are random graphs that may include
/// within-pair edges. Throws ValidationError for bad ranges and ExactTooLarge
/// when n_max exceeds the exact threshold.
OracleSummary run_oracle(const OracleOptions& options);

}  // namespace pairgraph
