#include "doctest.h"

#include <cmath>

#include "pairgraph/errors.hpp"
#include "pairgraph/statistics.hpp"
#include "test_support.hpp"

using namespace pairgraph;
using pairgraph::testing::E;
using pairgraph::testing::graph_of;

TEST_SUITE_BEGIN("test-statistics");

TEST_CASE("edge count examples") {
  const PooledIndex index(2);
  const auto g1 = extract_g1(graph_of(2, {E(1, 2), E(3, 4)}), index);
  auto c = count_edges(g1, Assignment(index, {1, 1, 2, 2}));
  CHECK(c.r1 == 1);
  CHECK(c.r2 == 1);
  c = count_edges(g1, Assignment(index, {1, 2, 2, 1}));
  CHECK(c.r1 == 0);
  CHECK(c.r2 == 0);

  const auto empty = extract_g1(graph_of(2, {}), index);
  c = count_edges(empty, identity_assignment(index));
  CHECK(c.r1 == 0);
  CHECK(c.r2 == 0);

  CHECK_THROWS_AS(count_edges(g1, identity_assignment(PooledIndex(3))), ValidationError);
}

TEST_CASE("centred counts give zero statistics") {
  NullMoments m;
  m.edge_count = 8;
  m.structure_sum = 12;
  m.degree_diff_sq = 6;
  m.e_r1 = 2.0;
  m.var_r1 = 18.0 / 16;
  m.cov_r12 = 6.0 / 16;
  m.var_sum = 3.0;
  m.var_diff = 1.5;
  const auto s = statistics({2, 2}, m);
  CHECK(s.value(TestKind::mean) == 0.0);
  CHECK(s.value(TestKind::scale) == 0.0);
  CHECK(s.value(TestKind::generic) == 0.0);
}

TEST_CASE("degenerate scale variance leaves only the mean statistic") {
  const PooledIndex index(2);
  const auto g1 = extract_g1(graph_of(2, {E(1, 2), E(3, 4)}), index);
  const auto m = null_moments(g1, index);
  const auto s = statistics(count_edges(g1, identity_assignment(index)), m);
  CHECK_FALSE(s.mean_degenerate());
  CHECK(s.scale_degenerate());
  CHECK(s.generic_degenerate());
  CHECK(s.value(TestKind::mean) == doctest::Approx(1.0));
  try {
    s.value(TestKind::generic);
    FAIL("expected DegenerateNullError");
  } catch (const DegenerateNullError& e) {
    CHECK_FALSE(e.mean_degenerate());
    CHECK(e.scale_degenerate());
    CHECK(e.generic_degenerate());
  }

  const auto empty = extract_g1(graph_of(2, {}), index);
  const auto none = statistics({0, 0}, null_moments(empty, index));
  CHECK(none.mean_degenerate());
  CHECK(none.scale_degenerate());
  CHECK(none.generic_degenerate());
}

TEST_CASE("generic statistic is the sum of squared mean and scale statistics") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t pairs = 2 + static_cast<std::size_t>(trial % 9);
    const PooledIndex index(pairs);
    const auto g1 = extract_g1(testing::random_graph(rng, pairs, 0.45), index);
    const auto m = null_moments(g1, index);
    std::vector<bool> swaps(pairs);
    for (std::size_t i = 0; i < pairs; ++i) swaps[i] = (rng() & 1U) != 0;
    const auto s = statistics(count_edges(g1, Assignment::from_swaps(index, swaps)), m);
    if (!s.z_g) continue;
    ++checked;
    CHECK(*s.z_g == doctest::Approx(*s.z_m * *s.z_m + *s.z_s * *s.z_s).epsilon(1e-10));
  }
  CHECK(checked > 100);
}

TEST_CASE("flipping every label negates the scale statistic and keeps the mean statistic") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t pairs = 3 + static_cast<std::size_t>(trial % 6);
    const PooledIndex index(pairs);
    const auto g1 = extract_g1(testing::random_graph(rng, pairs, 0.5), index);
    const auto m = null_moments(g1, index);
    std::vector<bool> swaps(pairs);
    for (std::size_t i = 0; i < pairs; ++i) swaps[i] = (rng() & 1U) != 0;
    const auto a = Assignment::from_swaps(index, swaps);
    const auto s = statistics(count_edges(g1, a), m);
    const auto t = statistics(count_edges(g1, a.flipped()), m);
    if (s.z_s) CHECK(*t.z_s == doctest::Approx(-*s.z_s));
    if (s.z_m) CHECK(*t.z_m == doctest::Approx(*s.z_m));
    if (s.z_g) CHECK(*t.z_g == doctest::Approx(*s.z_g));
  }
}

TEST_CASE("statistics are standardized under exhaustive enumeration") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t pairs = 4 + static_cast<std::size_t>(trial % 5);
    const PooledIndex index(pairs);
    const auto g1 = extract_g1(testing::random_graph(rng, pairs, 0.4), index);
    const auto m = null_moments(g1, index);
    double sm = 0, sm2 = 0, ss = 0, ss2 = 0, sg = 0, smss = 0;
    const std::size_t total = std::size_t{1} << pairs;
    bool defined = true;
    for (std::size_t mask = 0; mask < total && defined; ++mask) {
      std::vector<bool> swaps(pairs);
      for (std::size_t i = 0; i < pairs; ++i) swaps[i] = (mask >> i) & 1U;
      const auto s = statistics(count_edges(g1, Assignment::from_swaps(index, swaps)), m);
      if (!s.z_g) {
        defined = false;
        break;
      }
      sm += *s.z_m;
      sm2 += *s.z_m * *s.z_m;
      ss += *s.z_s;
      ss2 += *s.z_s * *s.z_s;
      smss += *s.z_m * *s.z_s;
      sg += *s.z_g;
    }
    if (!defined) continue;
    const double t = static_cast<double>(total);
    CHECK(std::abs(sm / t) < 1e-10);
    CHECK(std::abs(ss / t) < 1e-10);
    CHECK(sm2 / t == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ss2 / t == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(smss / t) < 1e-10);
    CHECK(sg / t == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_SUITE_END();
