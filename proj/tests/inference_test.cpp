#include "doctest.h"

#include <cmath>

#include "pairgraph/errors.hpp"
#include "pairgraph/inference.hpp"
#include "test_support.hpp"

using namespace pairgraph;
using pairgraph::testing::E;
using pairgraph::testing::graph_of;

namespace {

struct Instance {
  PooledIndex index;
  SimilarityGraph graph;
  CrossPairGraph g1;
  NullMoments moments;

  Instance(std::size_t pairs, SimilarityGraph g)
      : index(pairs), graph(std::move(g)), g1(extract_g1(graph, index)),
        moments(null_moments(g1, index)) {}

  bool nondegenerate() const { return moments.structure_sum > 0 && moments.degree_diff_sq > 0; }
};

Instance random_instance(std::mt19937_64& rng, std::size_t pairs, double density) {
  while (true) {
    Instance inst(pairs, testing::random_graph(rng, pairs, density));
    if (inst.nondegenerate()) return inst;
  }
}

// Permutation p-values straight from the definition, using the brute-force
// edge counts and floating statistics with a relative tie tolerance.
std::array<double, 3> reference_pvalues(const Instance& inst, std::size_t observed_mask,
                                        bool strict) {
  const testing::BruteForce brute(inst.graph, inst.index.pairs());
  const double q = static_cast<double>(inst.moments.structure_sum);
  const double p = static_cast<double>(inst.moments.degree_diff_sq);
  const double g = static_cast<double>(inst.moments.edge_count);
  auto stats = [&](std::size_t mask) {
    const auto [r1, r2] = brute.counts[mask];
    const double zm = (2.0 * static_cast<double>(r1 + r2) - g) / std::sqrt(q);
    const double zs = 2.0 * static_cast<double>(r1 - r2) / std::sqrt(p);
    return std::array<double, 3>{zm, std::abs(zs), zm * zm + zs * zs};
  };
  const auto obs = stats(observed_mask);
  std::array<double, 3> hits{0, 0, 0};
  for (std::size_t mask = 0; mask < brute.counts.size(); ++mask) {
    const auto s = stats(mask);
    for (int t = 0; t < 3; ++t) {
      const double slack = 1e-9 * std::max(1.0, std::abs(obs[t]));
      const bool hit = strict ? s[t] > obs[t] + slack : s[t] >= obs[t] - slack;
      hits[t] += hit;
    }
  }
  const double total = static_cast<double>(brute.counts.size());
  return {hits[0] / total, hits[1] / total, hits[2] / total};
}

Assignment assignment_of(const PooledIndex& index, std::size_t mask) {
  std::vector<bool> swaps(index.pairs());
  for (std::size_t i = 0; i < index.pairs(); ++i) swaps[i] = (mask >> i) & 1U;
  return Assignment::from_swaps(index, swaps);
}

PermutationPValues run(const Instance& inst, const Assignment& a, PermutationOptions options) {
  return permutation_pvalues(inst.index, inst.g1, inst.moments, count_edges(inst.g1, a), options);
}

}  // namespace

TEST_SUITE_BEGIN("inference-engine");

TEST_CASE("normal and chi-square tails") {
  CHECK(normal_sf(0.0) == 0.5);
  // Reference values from a 30-digit erfc evaluation.
  CHECK(normal_sf(1.959963985) == doctest::Approx(0.024999999973118437701).epsilon(1e-13));
  CHECK(normal_sf(0.5) == doctest::Approx(0.30853753872598689636).epsilon(1e-14));
  CHECK(normal_sf(1.0) == doctest::Approx(0.15865525393145705141).epsilon(1e-14));
  CHECK(normal_sf(3.0) == doctest::Approx(0.0013498980316300945267).epsilon(1e-13));
  CHECK(normal_sf(5.0) == doctest::Approx(2.8665157187919391167e-7).epsilon(1e-12));
  CHECK(normal_sf(8.0) == doctest::Approx(6.2209605742717841235e-16).epsilon(1e-12));
  CHECK(normal_sf(-2.0) == doctest::Approx(0.9772498680518207928).epsilon(1e-14));
  CHECK(std::abs(normal_sf(1.959963985) - 0.025) < 1e-7);

  CHECK(chi2_2_sf(0.0) == 1.0);
  CHECK(chi2_2_sf(2.0 * std::log(20.0)) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(std::abs(chi2_2_sf(5.991464547) - 0.050000000002699549672) < 1e-15);
}

TEST_CASE("asymptotic p-values") {
  StatisticTriple s;
  s.z_m = 0.0;
  s.z_s = 0.0;
  s.z_g = 0.0;
  auto p = asymptotic_pvalues(s);
  CHECK(*p.p_m == 0.5);
  CHECK(*p.p_s == 1.0);
  CHECK(*p.p_g == 1.0);

  s.z_m = 1.959963985;
  s.z_s = -1.959963985;
  s.z_g = 5.991464547;
  p = asymptotic_pvalues(s);
  CHECK(*p.p_m == doctest::Approx(0.025).epsilon(1e-6));
  CHECK(*p.p_s == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(*p.p_g == doctest::Approx(0.05).epsilon(1e-6));

  const auto none = asymptotic_pvalues(StatisticTriple{});
  CHECK_FALSE(none.p_m);
  CHECK_FALSE(none.p_s);
  CHECK_FALSE(none.p_g);
}

TEST_CASE("exact p-values match an independent enumerator") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t pairs = 3 + static_cast<std::size_t>(trial % 5);
    const auto inst = random_instance(rng, pairs, 0.5);
    const std::size_t mask = rng() % (std::size_t{1} << pairs);
    for (bool strict : {false, true}) {
      PermutationOptions o;
      o.strategy = PermutationStrategy::exact;
      o.strict = strict;
      const auto got = run(inst, assignment_of(inst.index, mask), o);
      const auto want = reference_pvalues(inst, mask, strict);
      CHECK(got.mode == PermutationMode::exact);
      CHECK(got.n_permutations == (std::uint64_t{1} << pairs));
      CHECK(*got.p_m == want[0]);
      CHECK(*got.p_s == want[1]);
      CHECK(*got.p_g == want[2]);
    }
  }
}

TEST_CASE("n = 3 hand example") {
  // Path 1-2-3 across the X side plus 4-5: deg = (1,2,1,1,1,0).
  const Instance inst(3, graph_of(3, {E(1, 2), E(2, 3), E(4, 5)}));
  REQUIRE(inst.nondegenerate());
  PermutationOptions o;
  o.strategy = PermutationStrategy::exact;
  const auto p = run(inst, identity_assignment(inst.index), o);
  const auto want = reference_pvalues(inst, 0, false);
  CHECK(*p.p_m == want[0]);
  CHECK(*p.p_s == want[1]);
  CHECK(*p.p_g == want[2]);
  // The identity labelling keeps all three edges monochromatic, the maximum of R1 + R2.
  CHECK(*p.p_m == doctest::Approx(2.0 / 8.0));
}

TEST_CASE("a null-maximal observation has p equal to its tie share") {
  const Instance inst(3, graph_of(3, {E(1, 2), E(2, 3), E(4, 5)}));
  PermutationOptions o;
  o.strategy = PermutationStrategy::exact;
  o.strict = true;
  const auto strict = run(inst, identity_assignment(inst.index), o);
  CHECK(*strict.p_m == 0.0);
}

TEST_CASE("exact p-values are valid at every level") {
  std::mt19937_64 rng(41);
  const std::size_t pairs = 8;
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = random_instance(rng, pairs, 0.3);
    PermutationOptions o;
    o.strategy = PermutationStrategy::exact;
    std::array<std::array<int, 3>, 3> below{};
    const std::array<double, 3> levels{0.05, 0.1, 0.25};
    const std::size_t total = std::size_t{1} << pairs;
    for (std::size_t mask = 0; mask < total; ++mask) {
      const auto p = run(inst, assignment_of(inst.index, mask), o);
      const std::array<double, 3> ps{*p.p_m, *p.p_s, *p.p_g};
      for (int l = 0; l < 3; ++l) {
        for (int t = 0; t < 3; ++t) below[l][t] += ps[t] <= levels[l];
      }
    }
    for (int l = 0; l < 3; ++l) {
      for (int t = 0; t < 3; ++t) {
        CHECK(static_cast<double>(below[l][t]) / static_cast<double>(total) <= levels[l] + 1e-12);
      }
    }
  }
}

TEST_CASE("Monte Carlo agrees with exact enumeration") {
  std::mt19937_64 rng(12);
  const auto inst = random_instance(rng, 12, 0.25);
  const auto a = assignment_of(inst.index, 0x5a5);
  PermutationOptions exact;
  exact.strategy = PermutationStrategy::exact;
  PermutationOptions mc;
  mc.strategy = PermutationStrategy::monte_carlo;
  mc.n_perm = 100000;
  mc.seed = 99;
  const auto pe = run(inst, a, exact);
  const auto pm = run(inst, a, mc);
  CHECK(pm.mode == PermutationMode::monte_carlo);
  CHECK(pm.n_permutations == 100000);
  const double b = 100000;
  for (auto [x, y] : {std::pair{*pe.p_m, *pm.p_m}, {*pe.p_s, *pm.p_s}, {*pe.p_g, *pm.p_g}}) {
    const double band = 3.0 * std::sqrt(x * (1 - x) / b) + 1.0 / b;
    CHECK(std::abs(x - y) <= band);
  }
}

TEST_CASE("Monte Carlo p-values are reproducible and thread independent") {
  std::mt19937_64 rng(19);
  const auto inst = random_instance(rng, 30, 0.1);
  const auto a = identity_assignment(inst.index);
  PermutationOptions o;
  o.n_perm = 2000;
  o.seed = 7;
  o.threads = 1;
  const auto one = run(inst, a, o);
  CHECK(one.mode == PermutationMode::monte_carlo);  // 30 pairs exceeds the default threshold
  o.threads = 4;
  const auto four = run(inst, a, o);
  CHECK(*one.p_m == *four.p_m);
  CHECK(*one.p_s == *four.p_s);
  CHECK(*one.p_g == *four.p_g);
  CHECK(*one.p_m >= 1.0 / 2001);
  CHECK(*one.p_m <= 1.0);

  o.seed = 8;
  const auto other = run(inst, a, o);
  CHECK(other.seed == 8);
}

TEST_CASE("strict counting never exceeds the default") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 6, 0.5);
    const auto a = assignment_of(inst.index, rng() % 64);
    PermutationOptions o;
    const auto loose = run(inst, a, o);
    o.strict = true;
    const auto strict = run(inst, a, o);
    CHECK(strict.strict);
    CHECK(*strict.p_m <= *loose.p_m);
    CHECK(*strict.p_s <= *loose.p_s);
    CHECK(*strict.p_g <= *loose.p_g);
  }
}

TEST_CASE("permutation option errors and degenerate statistics") {
  std::mt19937_64 rng(4);
  const auto inst = random_instance(rng, 21, 0.1);
  const auto a = identity_assignment(inst.index);
  PermutationOptions o;
  o.strategy = PermutationStrategy::exact;
  CHECK_THROWS_AS(run(inst, a, o), ExactTooLarge);
  o.exact_threshold = 21;
  o.strategy = PermutationStrategy::monte_carlo;
  o.n_perm = 0;
  CHECK_THROWS_AS(run(inst, a, o), ValidationError);

  const Instance flat(2, graph_of(2, {E(1, 2), E(3, 4)}));
  const auto p = run(flat, identity_assignment(flat.index), PermutationOptions{});
  CHECK(p.p_m);
  CHECK_FALSE(p.p_s);
  CHECK_FALSE(p.p_g);
}

TEST_SUITE_END();
