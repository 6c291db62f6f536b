#include "pairgraph/oracle.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "pairgraph/errors.hpp"
#include "pairgraph/null_moments.hpp"
#include "pairgraph/rng.hpp"
#include "pairgraph/statistics.hpp"

namespace pairgraph {

EnumeratedCounts enumerate_counts(const SimilarityGraph& graph, const PooledIndex& index,
                                  std::size_t max_pairs) {
  const std::size_t n = index.pairs();
  if (n > max_pairs || n >= 63) {
    throw ExactTooLarge("exhaustive enumeration limited to " + std::to_string(max_pairs) +
                        " pairs, got " + std::to_string(n));
  }
  if (graph.nodes() != index.nodes()) throw ValidationError("graph and index disagree on N");
  const std::uint64_t total = std::uint64_t{1} << n;
  EnumeratedCounts out;
  out.r1.reserve(total);
  out.r2.reserve(total);
  std::vector<bool> swapped(n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t i = 0; i < n; ++i) swapped[i] = ((mask >> i) & 1U) != 0;
    const auto g = Assignment::from_swaps(index, swapped);
    std::int64_t r1 = 0;
    std::int64_t r2 = 0;
    for (const auto& e : graph.edges()) {
      if (g[e.u] == 1 && g[e.v] == 1) ++r1;
      if (g[e.u] == 2 && g[e.v] == 2) ++r2;
    }
    out.r1.push_back(r1);
    out.r2.push_back(r2);
  }
  return out;
}

EnumeratedMoments enumerate_moments(const SimilarityGraph& graph, const PooledIndex& index,
                                    std::size_t max_pairs) {
  const auto counts = enumerate_counts(graph, index, max_pairs);
  const auto total = static_cast<double>(counts.r1.size());
  double s1 = 0, s2 = 0;
  for (std::size_t b = 0; b < counts.r1.size(); ++b) {
    s1 += static_cast<double>(counts.r1[b]);
    s2 += static_cast<double>(counts.r2[b]);
  }
  EnumeratedMoments m;
  m.e_r1 = s1 / total;
  m.e_r2 = s2 / total;
  double v1 = 0, v2 = 0, c12 = 0;
  for (std::size_t b = 0; b < counts.r1.size(); ++b) {
    const double a = static_cast<double>(counts.r1[b]) - m.e_r1;
    const double c = static_cast<double>(counts.r2[b]) - m.e_r2;
    v1 += a * a;
    v2 += c * c;
    c12 += a * c;
  }
  m.var_r1 = v1 / total;
  m.var_r2 = v2 / total;
  m.cov_r12 = c12 / total;
  m.var_sum = m.var_r1 + m.var_r2 + 2.0 * m.cov_r12;
  m.var_diff = m.var_r1 + m.var_r2 - 2.0 * m.cov_r12;
  return m;
}

bool OracleSummary::passed(double tolerance) const noexcept {
  return max_moment_error <= tolerance && max_symmetry_error <= tolerance &&
         max_identity_residual <= tolerance && max_standardization_error <= tolerance &&
         max_correlation <= tolerance && census_mismatches == 0;
}

namespace {

SimilarityGraph random_kmst(Xoshiro256StarStar& rng, std::size_t n, std::size_t d, int k_max) {
  boost::random::normal_distribution<double> normal;
  Matrix pooled(2 * n, d);
  for (Eigen::Index i = 0; i < pooled.rows(); ++i) {
    for (Eigen::Index j = 0; j < pooled.cols(); ++j) pooled(i, j) = normal(rng);
  }
  const auto dist = distance_matrix(pooled, Metric::euclidean);
  const int cap = std::min<int>(k_max, static_cast<int>(n));  // floor(2n / 2)
  int k = boost::random::uniform_int_distribution<int>(1, cap)(rng);
  // Greedy higher-order MSTs can run out of spanning edges; step k down.
  while (true) {
    try {
      return build_kmst(dist, k);
    } catch (const DisconnectedError&) {
      if (k == 1) throw;
      --k;
    }
  }
}

SimilarityGraph random_graph(Xoshiro256StarStar& rng, const PooledIndex& index) {
  const double density = boost::random::uniform_real_distribution<double>(0.15, 0.85)(rng);
  boost::random::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < index.nodes(); ++i) {
    for (std::size_t j = i + 1; j < index.nodes(); ++j) {
      const bool within = j == index.partner(i);
      if (unit(rng) < (within ? 0.5 : density)) edges.push_back(Edge::make(i, j));
    }
  }
  return SimilarityGraph(index.nodes(), std::move(edges));
}

}  // namespace

OracleSummary run_oracle(const OracleOptions& options) {
  if (options.instances < 1) throw ValidationError("instance count must be at least 1");
  if (options.n_min < 2 || options.n_min > options.n_max) {
    throw ValidationError("pair range must satisfy 2 <= n_min <= n_max");
  }
  if (options.d_min < 1 || options.d_min > options.d_max) {
    throw ValidationError("dimension range must satisfy 1 <= d_min <= d_max");
  }
  if (options.k_max < 1) throw ValidationError("k_max must be at least 1");
  if (options.n_max > options.exact_threshold) {
    throw ExactTooLarge("n_max = " + std::to_string(options.n_max) +
                        " exceeds the exact enumeration threshold " +
                        std::to_string(options.exact_threshold));
  }

  OracleSummary summary;
  for (std::size_t inst = 0; inst < options.instances; ++inst) {
    Xoshiro256StarStar rng(stream_seed(options.seed, inst));
    const auto n = boost::random::uniform_int_distribution<std::size_t>(options.n_min,
                                                                        options.n_max)(rng);
    const auto d = boost::random::uniform_int_distribution<std::size_t>(options.d_min,
                                                                        options.d_max)(rng);
    const PooledIndex index(n);
    const bool kmst = inst % 2 == 0;
    const auto graph = kmst ? random_kmst(rng, n, d, options.k_max) : random_graph(rng, index);
    summary.kmst_instances += kmst;
    ++summary.instances;

    const auto g1 = extract_g1(graph, index);
    const auto analytic = null_moments(g1, index);
    const auto counts = enumerate_counts(graph, index, options.exact_threshold);
    const auto brute = enumerate_moments(graph, index, options.exact_threshold);

    const double errors[] = {
        std::abs(analytic.e_r1 - brute.e_r1),       std::abs(analytic.var_r1 - brute.var_r1),
        std::abs(analytic.cov_r12 - brute.cov_r12), std::abs(analytic.var_sum - brute.var_sum),
        std::abs(analytic.var_diff - brute.var_diff)};
    for (double e : errors) summary.max_moment_error = std::max(summary.max_moment_error, e);
    summary.max_symmetry_error =
        std::max({summary.max_symmetry_error, std::abs(brute.e_r1 - brute.e_r2),
                  std::abs(brute.var_r1 - brute.var_r2)});

    const auto diag = condition_diagnostics(g1, index);
    if (census_q3(g1, index) != diag.q3) ++summary.census_mismatches;

    if (analytic.var_sum < kDegenerateTolerance || analytic.var_diff < kDegenerateTolerance) {
      continue;
    }
    ++summary.nondegenerate;
    double sm = 0, ss = 0, smm = 0, sss = 0, sms = 0;
    for (std::size_t b = 0; b < counts.r1.size(); ++b) {
      const auto z = statistics({counts.r1[b], counts.r2[b]}, analytic);
      const double zm = *z.z_m;
      const double zs = *z.z_s;
      summary.max_identity_residual =
          std::max(summary.max_identity_residual, std::abs(*z.z_g - (zm * zm + zs * zs)));
      sm += zm;
      ss += zs;
      smm += zm * zm;
      sss += zs * zs;
      sms += zm * zs;
    }
    const auto total = static_cast<double>(counts.r1.size());
    const double mean_m = sm / total;
    const double mean_s = ss / total;
    const double var_m = smm / total - mean_m * mean_m;
    const double var_s = sss / total - mean_s * mean_s;
    const double corr = (sms / total - mean_m * mean_s) / std::sqrt(var_m * var_s);
    summary.max_standardization_error =
        std::max({summary.max_standardization_error, std::abs(mean_m), std::abs(mean_s),
                  std::abs(smm / total - 1.0), std::abs(sss / total - 1.0)});
    summary.max_correlation = std::max(summary.max_correlation, std::abs(corr));
  }
  return summary;
}

}  // namespace pairgraph
