#include "pairgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pairgraph/errors.hpp"
#include "pairgraph/io.hpp"

namespace pairgraph {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

struct Candidate {
  double weight;
  Edge edge;
};

std::vector<Candidate> sorted_candidates(const DistanceMatrix& dist) {
  const std::size_t n = dist.size();
  std::vector<Candidate> out;
  out.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.push_back({dist(i, j), Edge::make(i, j)});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.edge < b.edge;
  });
  return out;
}

// One Kruskal pass over the unused candidates; marks chosen ones as used.
void grow_tree(const std::vector<Candidate>& candidates, std::vector<bool>& used,
               std::size_t nodes, int level, std::vector<Edge>& out) {
  DisjointSets sets(nodes);
  std::size_t added = 0;
  for (std::size_t c = 0; c < candidates.size() && added + 1 < nodes; ++c) {
    if (used[c]) continue;
    const Edge e = candidates[c].edge;
    if (sets.unite(e.u, e.v)) {
      used[c] = true;
      out.push_back(e);
      ++added;
    }
  }
  if (added + 1 < nodes) {
    throw DisconnectedError(level, "no spanning tree exists at MST level " +
                                       std::to_string(level) + " after excluding earlier edges");
  }
}

}  // namespace

Metric parse_metric(std::string_view tag) {
  if (tag == "euclidean") return Metric::euclidean;
  if (tag == "manhattan") return Metric::manhattan;
  if (tag == "precomputed") return Metric::precomputed;
  throw ValidationError("unknown metric '" + std::string(tag) + "'");
}

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
    case Metric::euclidean: return "euclidean";
    case Metric::manhattan: return "manhattan";
    case Metric::precomputed: return "precomputed";
  }
  return "unknown";
}

DistanceMatrix DistanceMatrix::precomputed(Matrix values) {
  if (values.rows() != values.cols()) {
    throw ValidationError("distance matrix must be square, got " + std::to_string(values.rows()) +
                          "x" + std::to_string(values.cols()));
  }
  const auto n = values.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = values(i, j);
      const auto where = " at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("distance must be finite and non-negative" + where);
      }
      if (i == j && v != 0.0) throw ValidationError("distance diagonal must be zero" + where);
      if (v != values(j, i)) throw ValidationError("distance matrix is not symmetric" + where);
    }
  }
  return DistanceMatrix(std::move(values), Metric::precomputed);
}

DistanceMatrix distance_matrix(const Matrix& pooled, Metric metric) {
  if (metric == Metric::precomputed) {
    throw ValidationError("precomputed distances must be supplied as a matrix, not derived");
  }
  if (!pooled.allFinite()) throw ValidationError("pooled observations contain non-finite values");
  const auto n = pooled.rows();
  Matrix d = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto diff = pooled.row(i) - pooled.row(j);
      const double v =
          metric == Metric::euclidean ? std::sqrt(diff.squaredNorm()) : diff.cwiseAbs().sum();
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return DistanceMatrix(std::move(d), metric);
}

DistanceMatrix read_distance_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    rows.push_back(parse_csv_numbers(line, line_no));
  }
  if (rows.empty()) throw ValidationError("distance matrix CSV is empty");
  const std::size_t n = rows.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ValidationError("distance matrix row " + std::to_string(i + 1) + " has " +
                            std::to_string(rows[i].size()) + " columns, expected " +
                            std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return DistanceMatrix::precomputed(std::move(m));
}

SimilarityGraph::SimilarityGraph(std::size_t nodes, std::vector<Edge> edges, int k)
    : nodes_(nodes), edges_(std::move(edges)), k_(k) {
  std::vector<Edge> sorted;
  sorted.reserve(edges_.size());
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw ValidationError("self-loop at node " + std::to_string(e.u + 1));
    if (e.v >= nodes_) {
      throw ValidationError("edge endpoint " + std::to_string(e.v + 1) + " exceeds node count " +
                            std::to_string(nodes_));
    }
    sorted.push_back(e);
  }
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("duplicate edge in similarity graph");
  }
}

SimilarityGraph build_mst(const DistanceMatrix& dist, const std::vector<Edge>& excluded) {
  const std::size_t n = dist.size();
  if (n < 2) throw ValidationError("a spanning tree needs at least 2 nodes");
  const auto candidates = sorted_candidates(dist);
  std::vector<Edge> skip = excluded;
  for (auto& e : skip) e = Edge::make(e.u, e.v);
  std::sort(skip.begin(), skip.end());
  std::vector<bool> used(candidates.size(), false);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    used[c] = std::binary_search(skip.begin(), skip.end(), candidates[c].edge);
  }
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  grow_tree(candidates, used, n, 1, edges);
  return SimilarityGraph(n, std::move(edges), 1);
}

SimilarityGraph build_kmst(const DistanceMatrix& dist, int k) {
  const std::size_t n = dist.size();
  if (n < 2) throw ValidationError("a spanning tree needs at least 2 nodes");
  if (k < 1) throw ValidationError("k must be a positive integer, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > n / 2) {
    throw ValidationError("k = " + std::to_string(k) + " exceeds floor(N/2) = " +
                          std::to_string(n / 2) + " for N = " + std::to_string(n) + " nodes");
  }
  const auto candidates = sorted_candidates(dist);
  std::vector<bool> used(candidates.size(), false);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(k) * (n - 1));
  for (int level = 1; level <= k; ++level) grow_tree(candidates, used, n, level, edges);
  return SimilarityGraph(n, std::move(edges), k);
}

double total_weight(const SimilarityGraph& graph, const DistanceMatrix& dist) {
  double w = 0.0;
  for (const auto& e : graph.edges()) w += dist(e.u, e.v);
  return w;
}

}  // namespace pairgraph
