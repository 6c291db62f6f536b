#pragma once

// Asymptotic and permutation p-values for the paired graph statistics.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pairgraph/core.hpp"
#include "pairgraph/null_moments.hpp"
#include "pairgraph/parallel.hpp"
#include "pairgraph/statistics.hpp"

namespace pairgraph {

/// Upper tail of the standard normal.
double normal_sf(double x);

/// Upper tail of chi-square with 2 degrees of freedom, exp(-x/2).
double chi2_2_sf(double x);

struct AsymptoticPValues {
  std::optional<double> p_m;  // one-sided, rejects large z_m
  std::optional<double> p_s;  // two-sided in z_s
  std::optional<double> p_g;  // chi-square(2) tail of z_g
};

AsymptoticPValues asymptotic_pvalues(const StatisticTriple& stats);

enum class PermutationMode { exact, monte_carlo };

std::string_view to_string(PermutationMode mode) noexcept;

enum class PermutationStrategy {
  automatic,    // exact when pairs <= exact_threshold, else Monte Carlo
  exact,        // throws ExactTooLarge above the threshold
  monte_carlo,
};

struct PermutationOptions {
  PermutationStrategy strategy = PermutationStrategy::automatic;
  std::uint64_t n_perm = 10000;
  std::uint64_t seed = 0;
  std::size_t exact_threshold = 20;
  bool strict = false;  // count only permuted statistics strictly above the observed one
  unsigned threads = thread_count();
};

struct PermutationPValues {
  std::optional<double> p_m;
  std::optional<double> p_s;
  std::optional<double> p_g;
  std::uint64_t n_permutations = 0;
  PermutationMode mode = PermutationMode::exact;
  std::uint64_t seed = 0;
  bool strict = false;
};

/// Exact mode enumerates all 2^n within-pair swaps and reports the plain
/// proportion #{stat >= observed} / 2^n. Monte Carlo mode draws n_perm
/// uniform swap vectors, iteration b from stream (seed, b), and reports
/// (1 + #{stat >= observed}) / (1 + n_perm). The mean test ranks z_m, the
/// scale test |z_s| and the generic test z_g. Comparisons use exact integer
/// keys, so tied statistics tie exactly. Undefined statistics give no p-value.
PermutationPValues permutation_pvalues(const PooledIndex& index, const CrossPairGraph& g1,
                                       const NullMoments& moments, const EdgeCounts& observed,
                                       const PermutationOptions& options);

}  // namespace pairgraph
