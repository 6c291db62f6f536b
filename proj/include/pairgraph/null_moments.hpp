#pragma once

// Exact moments of (R1, R2) under the paired-comparison permutation null,
// where each pair independently keeps or swaps its labels with probability 1/2.
//
// With G1 the similarity graph minus within-pair edges, deg(i) the degree of
// node i in G1, C1 the number of unordered edge pairs {(i,j), (i*,j*)} and C2
// the number of unordered edge pairs {(i,j), (i,j*)}:
//
//   E(R1)       = |G1| / 4
//   Var(R1)     = (|G1| + 2 C1 - 2 C2) / 16 + sum_pairs (deg(i) - deg(i*))^2 / 16
//   Cov(R1, R2) = (|G1| + 2 C1 - 2 C2) / 16 - sum_pairs (deg(i) - deg(i*))^2 / 16
//
// All counts are integers; doubles only appear in the final division.

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "pairgraph/core.hpp"
#include "pairgraph/graph.hpp"

namespace pairgraph {

class CrossPairGraph {
 public:
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::int64_t size() const noexcept { return static_cast<std::int64_t>(edges_.size()); }
  const std::vector<std::int64_t>& degrees() const noexcept { return degree_; }
  std::int64_t degree(std::size_t node) const noexcept { return degree_[node]; }
  std::int64_t c1() const noexcept { return c1_; }
  std::int64_t c2() const noexcept { return c2_; }
  /// Neighbours of each node, sorted ascending.
  const std::vector<std::vector<std::uint32_t>>& adjacency() const noexcept { return adjacency_; }

 private:
  friend CrossPairGraph extract_g1(const SimilarityGraph&, const PooledIndex&);

  std::vector<Edge> edges_;
  std::vector<std::int64_t> degree_;
  std::vector<std::vector<std::uint32_t>> adjacency_;
  std::int64_t c1_ = 0;
  std::int64_t c2_ = 0;
};

/// Drops within-pair edges and caches degrees, C1 and C2.
/// Throws ValidationError when the graph's node count differs from index.nodes().
CrossPairGraph extract_g1(const SimilarityGraph& graph, const PooledIndex& index);

struct NullMoments {
  std::int64_t edge_count = 0;         // |G1|
  std::int64_t structure_sum = 0;      // |G1| + 2 C1 - 2 C2
  std::int64_t degree_diff_sq = 0;     // sum over pairs of (deg(i) - deg(i*))^2
  double e_r1 = 0.0;
  double var_r1 = 0.0;
  double cov_r12 = 0.0;
  double var_sum = 0.0;   // Var(R1 + R2)
  double var_diff = 0.0;  // Var(R1 - R2)

  double e_sum() const noexcept { return 2.0 * e_r1; }
  Eigen::Matrix2d sigma_r() const;
};

NullMoments null_moments(const CrossPairGraph& g1, const PooledIndex& index);

struct ConditionDiagnostics {
  std::int64_t sum_ab = 0;          // sum over e in G1 of |A_e| |B_e|
  std::int64_t sum_degdiff_sq = 0;  // sum over pairs of (deg(i) - deg(i*))^2
  std::int64_t q3 = 0;              // |G1| + 2 C1 - 2 C2
  /// sum_ab / q3^1.5; an informal indicator, NaN when q3 == 0.
  double ratio() const noexcept;
};

/// A_e holds the G1 edges touching any of e's endpoints or their partners
/// (e itself included); B_e is the union of A_f over f in A_e.
ConditionDiagnostics condition_diagnostics(const CrossPairGraph& g1, const PooledIndex& index);

/// Recomputes |G1| + 2 C1 - 2 C2 pair-of-pairs by pair-of-pairs: for each
/// subgraph between two pairs, adds (#edges) + 2 (#disjoint edge pairs)
/// - 2 (#edge pairs sharing a node).
std::int64_t census_q3(const CrossPairGraph& g1, const PooledIndex& index);

}  // namespace pairgraph
