#include "doctest.h"

#include <limits>

#include "pairgraph/core.hpp"
#include "pairgraph/errors.hpp"

using namespace pairgraph;

TEST_SUITE_BEGIN("core");

TEST_CASE("pool stacks x rows then y rows") {
  Matrix x(2, 2), y(2, 2);
  x << 1, 2, 5, 6;
  y << 3, 4, 7, 8;
  const auto pooled = pool(PairedSample(x, y));
  CHECK(pooled.points.rows() == 4);
  CHECK(pooled.points.topRows(2) == x);
  CHECK(pooled.points.bottomRows(2) == y);
  CHECK(pooled.index.partner(0) == 2);
  CHECK(pooled.index.partner(1) == 3);
}

TEST_CASE("single pair index") {
  const PooledIndex index(1);
  CHECK(index.nodes() == 2);
  CHECK(index.partner(0) == 1);
  CHECK(index.partner(1) == 0);
  CHECK(identity_assignment(index).labels() == std::vector<std::uint8_t>{1, 2});
}

TEST_CASE("partner is an involution without fixed points") {
  for (std::size_t n : {1u, 2u, 7u, 30u}) {
    const PooledIndex index(n);
    for (std::size_t i = 0; i < index.nodes(); ++i) {
      CHECK(index.partner(index.partner(i)) == i);
      CHECK(index.partner(i) != i);
      CHECK(index.pair_of(i) == index.pair_of(index.partner(i)));
    }
  }
}

TEST_CASE("identity assignment") {
  CHECK(identity_assignment(PooledIndex(2)).labels() == std::vector<std::uint8_t>{1, 1, 2, 2});
  for (std::size_t n : {1u, 3u, 11u}) {
    const auto g = identity_assignment(PooledIndex(n));
    std::size_t ones = 0;
    for (std::size_t i = 0; i < g.size(); ++i) ones += g[i] == 1;
    CHECK(ones == n);
    for (std::size_t i = 0; i < n; ++i) CHECK(g[i] + g[i + n] == 3);
  }
}

TEST_CASE("assignments from swaps and flips keep one label per pair") {
  const PooledIndex index(3);
  const auto a = Assignment::from_swaps(index, {true, false, true});
  CHECK(a.labels() == std::vector<std::uint8_t>{2, 1, 2, 1, 2, 1});
  CHECK(a.flipped().labels() == std::vector<std::uint8_t>{1, 2, 1, 2, 1, 2});
  CHECK_NOTHROW(Assignment(index, {1, 1, 1, 2, 2, 2}));
  CHECK_THROWS_AS(Assignment(index, {1, 1, 1, 1, 2, 2}), ValidationError);
  CHECK_THROWS_AS(Assignment(index, {1, 2, 3, 2, 1, 1}), ValidationError);
  CHECK_NOTHROW(Assignment(index, {1, 2, 1, 2, 1, 2}));
  CHECK_THROWS_AS(Assignment(index, {1, 1, 2, 2, 2, 2}), ValidationError);
  CHECK_THROWS_AS(Assignment(index, {1, 2}), ValidationError);
}

TEST_CASE("paired sample validation") {
  Matrix x(3, 2), y(3, 2);
  x.setOnes();
  y.setZero();
  CHECK_NOTHROW(PairedSample(x, y));
  CHECK_THROWS_AS(PairedSample(x, Matrix::Zero(3, 3)), ValidationError);
  CHECK_THROWS_AS(PairedSample(Matrix::Zero(1, 2), Matrix::Zero(1, 2)), ValidationError);

  y(1, 0) = std::numeric_limits<double>::quiet_NaN();
  try {
    PairedSample bad(x, y);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("pair 2, column 1") != std::string::npos);
  }
  y(1, 0) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(PairedSample(x, y), ValidationError);
}

TEST_SUITE_END();
