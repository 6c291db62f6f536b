#include "pairgraph/analysis.hpp"

#include <string>

#include "pairgraph/errors.hpp"

namespace pairgraph {

GraphAnalysis analyze_graph(SimilarityGraph graph, const PooledIndex& index) {
  auto g1 = extract_g1(graph, index);
  const auto moments = null_moments(g1, index);
  const auto observed = count_edges(g1, identity_assignment(index));
  const auto stats = statistics(observed, moments);
  return {index, std::move(graph), std::move(g1), moments, observed, stats};
}

GraphAnalysis analyze_distances(const DistanceMatrix& dist, int k) {
  if (dist.size() % 2 != 0 || dist.size() < 4) {
    throw ValidationError("pooled distance matrix must have an even size N = 2n >= 4, got " +
                          std::to_string(dist.size()));
  }
  const PooledIndex index(dist.size() / 2);
  return analyze_graph(build_kmst(dist, k), index);
}

GraphAnalysis analyze_sample(const PairedSample& sample, int k, Metric metric) {
  const auto pooled = pool(sample);
  return analyze_distances(distance_matrix(pooled.points, metric), k);
}

}  // namespace pairgraph
