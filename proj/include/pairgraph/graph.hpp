#pragma once

// Distance matrices and k-MST similarity graphs on pooled observations.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "pairgraph/core.hpp"

namespace pairgraph {

enum class Metric { euclidean, manhattan, precomputed };

Metric parse_metric(std::string_view tag);
std::string_view to_string(Metric metric) noexcept;

/// Symmetric, zero-diagonal, finite, non-negative N x N matrix.
class DistanceMatrix {
 public:
  /// Validates a user-supplied matrix and tags it `precomputed`.
  static DistanceMatrix precomputed(Matrix values);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  Metric metric() const noexcept { return metric_; }
  const Matrix& values() const noexcept { return values_; }

 private:
  DistanceMatrix(Matrix values, Metric metric) : values_(std::move(values)), metric_(metric) {}
  friend DistanceMatrix distance_matrix(const Matrix& pooled, Metric metric);

  Matrix values_;
  Metric metric_;
};

DistanceMatrix distance_matrix(const Matrix& pooled, Metric metric);

/// Reads an N x N distance matrix from CSV (no header). Throws ValidationError.
DistanceMatrix read_distance_csv(std::istream& in);

/// Undirected edge stored with u < v.
struct Edge {
  std::uint32_t u;
  std::uint32_t v;

  static Edge make(std::size_t a, std::size_t b) noexcept {
    return a < b ? Edge{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)}
                 : Edge{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(a)};
  }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class SimilarityGraph {
 public:
  /// Validates range, self-loops and duplicates; k = 0 marks a hand-built graph.
  SimilarityGraph(std::size_t nodes, std::vector<Edge> edges, int k = 0);

  std::size_t nodes() const noexcept { return nodes_; }
  int k() const noexcept { return k_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }

 private:
  std::size_t nodes_;
  std::vector<Edge> edges_;
  int k_;
};

/// Minimum spanning tree avoiding `excluded`.
///
/// Candidate edges are ordered by (weight, smaller endpoint, larger endpoint)
/// and grown Kruskal-style, so the result is a deterministic function of the
/// matrix. Throws DisconnectedError when the remaining edges do not span.
SimilarityGraph build_mst(const DistanceMatrix& dist, const std::vector<Edge>& excluded = {});

/// Union of k successive edge-disjoint MSTs. Edges appear level by level, in
/// insertion order within a level. Throws ValidationError for k < 1 or
/// k > floor(N/2), DisconnectedError naming the level that cannot span.
SimilarityGraph build_kmst(const DistanceMatrix& dist, int k);

double total_weight(const SimilarityGraph& graph, const DistanceMatrix& dist);

}  // namespace pairgraph
