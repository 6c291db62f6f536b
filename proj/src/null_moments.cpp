#include "pairgraph/null_moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "pairgraph/errors.hpp"

namespace pairgraph {

CrossPairGraph extract_g1(const SimilarityGraph& graph, const PooledIndex& index) {
  if (graph.nodes() != index.nodes()) {
    throw ValidationError("graph has " + std::to_string(graph.nodes()) +
                          " nodes but the pooled index has " + std::to_string(index.nodes()));
  }
  CrossPairGraph g1;
  const std::size_t n_nodes = index.nodes();
  g1.degree_.assign(n_nodes, 0);
  g1.adjacency_.assign(n_nodes, {});
  for (const auto& e : graph.edges()) {
    if (e.v == index.partner(e.u)) continue;
    g1.edges_.push_back(e);
    ++g1.degree_[e.u];
    ++g1.degree_[e.v];
    g1.adjacency_[e.u].push_back(e.v);
    g1.adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : g1.adjacency_) std::sort(nb.begin(), nb.end());

  auto adjacent = [&](std::size_t a, std::size_t b) {
    const auto& nb = g1.adjacency_[a];
    return std::binary_search(nb.begin(), nb.end(), static_cast<std::uint32_t>(b));
  };

  // Each edge has exactly one partner image, never itself, so every C1 pair
  // is seen twice.
  std::int64_t images = 0;
  for (const auto& e : g1.edges_) {
    if (adjacent(index.partner(e.u), index.partner(e.v))) ++images;
  }
  g1.c1_ = images / 2;

  std::int64_t c2 = 0;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    for (auto j : g1.adjacency_[i]) {
      const auto js = index.partner(j);
      if (js > j && adjacent(i, js)) ++c2;
    }
  }
  g1.c2_ = c2;
  return g1;
}

Eigen::Matrix2d NullMoments::sigma_r() const {
  Eigen::Matrix2d s;
  s << var_r1, cov_r12, cov_r12, var_r1;
  return s;
}

NullMoments null_moments(const CrossPairGraph& g1, const PooledIndex& index) {
  NullMoments m;
  m.edge_count = g1.size();
  m.structure_sum = g1.size() + 2 * g1.c1() - 2 * g1.c2();
  for (std::size_t i = 0; i < index.pairs(); ++i) {
    const auto diff = g1.degree(i) - g1.degree(index.partner(i));
    m.degree_diff_sq += diff * diff;
  }
  const auto s = static_cast<double>(m.structure_sum);
  const auto q = static_cast<double>(m.degree_diff_sq);
  m.e_r1 = static_cast<double>(m.edge_count) / 4.0;
  m.var_r1 = (s + q) / 16.0;
  m.cov_r12 = (s - q) / 16.0;
  m.var_sum = s / 4.0;
  m.var_diff = q / 4.0;
  return m;
}

double ConditionDiagnostics::ratio() const noexcept {
  if (q3 <= 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(sum_ab) / std::pow(static_cast<double>(q3), 1.5);
}

ConditionDiagnostics condition_diagnostics(const CrossPairGraph& g1, const PooledIndex& index) {
  ConditionDiagnostics out;
  const auto& edges = g1.edges();
  const std::size_t m = edges.size();

  std::vector<std::vector<std::size_t>> incident(index.nodes());
  for (std::size_t id = 0; id < m; ++id) {
    incident[edges[id].u].push_back(id);
    incident[edges[id].v].push_back(id);
  }

  // stamp[id] == tag marks edge id as already collected in the current set.
  std::vector<std::size_t> stamp(m, std::numeric_limits<std::size_t>::max());
  std::size_t tag = 0;

  std::vector<std::vector<std::size_t>> a_sets(m);
  for (std::size_t id = 0; id < m; ++id, ++tag) {
    const auto e = edges[id];
    const std::size_t touch[4] = {e.u, index.partner(e.u), e.v, index.partner(e.v)};
    for (auto node : touch) {
      for (auto f : incident[node]) {
        if (stamp[f] != tag) {
          stamp[f] = tag;
          a_sets[id].push_back(f);
        }
      }
    }
  }

  for (std::size_t id = 0; id < m; ++id, ++tag) {
    std::int64_t b_size = 0;
    for (auto f : a_sets[id]) {
      for (auto h : a_sets[f]) {
        if (stamp[h] != tag) {
          stamp[h] = tag;
          ++b_size;
        }
      }
    }
    out.sum_ab += static_cast<std::int64_t>(a_sets[id].size()) * b_size;
  }

  for (std::size_t i = 0; i < index.pairs(); ++i) {
    const auto diff = g1.degree(i) - g1.degree(index.partner(i));
    out.sum_degdiff_sq += diff * diff;
  }
  out.q3 = g1.size() + 2 * g1.c1() - 2 * g1.c2();
  return out;
}

std::int64_t census_q3(const CrossPairGraph& g1, const PooledIndex& index) {
  struct Keyed {
    std::pair<std::size_t, std::size_t> pairs;
    Edge edge;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(g1.edges().size());
  for (const auto& e : g1.edges()) {
    auto a = index.pair_of(e.u);
    auto b = index.pair_of(e.v);
    if (a > b) std::swap(a, b);
    keyed.push_back({{a, b}, e});
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const Keyed& l, const Keyed& r) { return l.pairs < r.pairs; });

  std::int64_t total = 0;
  for (std::size_t begin = 0; begin < keyed.size();) {
    std::size_t end = begin;
    while (end < keyed.size() && keyed[end].pairs == keyed[begin].pairs) ++end;
    std::int64_t sharing = 0;
    std::int64_t disjoint = 0;
    for (std::size_t a = begin; a < end; ++a) {
      for (std::size_t b = a + 1; b < end; ++b) {
        const auto e = keyed[a].edge;
        const auto f = keyed[b].edge;
        const bool share = e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
        (share ? sharing : disjoint) += 1;
      }
    }
    total += static_cast<std::int64_t>(end - begin) + 2 * disjoint - 2 * sharing;
    begin = end;
  }
  return total;
}

}  // namespace pairgraph
