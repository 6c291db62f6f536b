#pragma once

// The per-dataset pipeline: pool -> distances -> k-MST -> G1 -> moments -> statistics.

#include "pairgraph/core.hpp"
#include "pairgraph/graph.hpp"
#include "pairgraph/null_moments.hpp"
#include "pairgraph/statistics.hpp"

namespace pairgraph {

struct GraphAnalysis {
  PooledIndex index;
  SimilarityGraph graph;
  CrossPairGraph g1;
  NullMoments moments;
  EdgeCounts observed;
  StatisticTriple stats;
};

/// Analyses a similarity graph on pooled nodes (x rows first, then y rows).
GraphAnalysis analyze_graph(SimilarityGraph graph, const PooledIndex& index);

/// Builds the k-MST from `dist`, whose rows follow the pooled order.
GraphAnalysis analyze_distances(const DistanceMatrix& dist, int k);

GraphAnalysis analyze_sample(const PairedSample& sample, int k, Metric metric = Metric::euclidean);

}  // namespace pairgraph
