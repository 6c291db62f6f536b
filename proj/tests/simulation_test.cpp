#include "doctest.h"

#include <cmath>

#include "pairgraph/errors.hpp"
#include "pairgraph/simulation.hpp"

using namespace pairgraph;

namespace {

Eigen::MatrixXd covariance(const Matrix& m) {
  const Eigen::MatrixXd centred = m.rowwise() - m.colwise().mean();
  return centred.transpose() * centred / static_cast<double>(m.rows() - 1);
}

double correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::VectorXd ca = a.array() - a.mean();
  const Eigen::VectorXd cb = b.array() - b.mean();
  return ca.dot(cb) / std::sqrt(ca.squaredNorm() * cb.squaredNorm());
}

}  // namespace

TEST_SUITE_BEGIN("sim-study");

TEST_CASE("exchangeable spec layout") {
  const auto s = GeneratorSpec::exchangeable(Family::normal, 60, 100, 1.5, 1.0, 1.0, 0.6);
  CHECK(s.mean_shift_norm() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s.nu2.isZero());
  CHECK(s.nu1.minCoeff() == s.nu1.maxCoeff());
  CHECK(s.gamma().rows() == 200);
  CHECK(s.gamma()(0, 100) == 0.6);
  CHECK(s.gamma()(0, 101) == 0.0);
  CHECK_FALSE(s.is_null());
  CHECK(GeneratorSpec::exchangeable(Family::t3, 10, 3, 0.0, 2.0, 2.0, 0.1).is_null());
  CHECK_FALSE(GeneratorSpec::exchangeable(Family::t3, 10, 3, 0.0, 2.0, 1.0, 0.1).is_null());
  CHECK(parse_family("lognormal") == Family::lognormal);
  CHECK_THROWS_AS(parse_family("cauchy"), ValidationError);
}

TEST_CASE("independent blocks are uncorrelated") {
  const auto s = GeneratorSpec::exchangeable(Family::normal, 10000, 2, 0.0, 1.0, 1.0, 0.0);
  const auto sample = generate(s, 3);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      CHECK(std::abs(correlation(sample.x().col(i), sample.y().col(j))) < 0.1);
    }
  }
}

TEST_CASE("normal draws hit the target covariance") {
  const auto s = GeneratorSpec::exchangeable(Family::normal, 100000, 2, 0.0, 1.0, 1.0, 0.6);
  const auto sample = generate(s, 5);
  const auto cx = covariance(sample.x());
  CHECK((cx - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.05);
  CHECK(correlation(sample.x().col(0), sample.y().col(0)) == doctest::Approx(0.6).epsilon(0.05));
  CHECK(std::abs(correlation(sample.x().col(0), sample.y().col(1))) < 0.02);
}

TEST_CASE("t3 draws have the target variance") {
  const auto s = GeneratorSpec::exchangeable(Family::t3, 100000, 2, 0.0, 2.0, 2.0, 0.5);
  const auto sample = generate(s, 11);
  const auto cx = covariance(sample.x());
  const auto cy = covariance(sample.y());
  for (Eigen::Index i = 0; i < 2; ++i) {
    CHECK(std::abs(cx(i, i) / 2.0 - 1.0) < 0.05);
    CHECK(std::abs(cy(i, i) / 2.0 - 1.0) < 0.05);
  }
}

TEST_CASE("lognormal draws are positive with the lognormal mean") {
  auto s = GeneratorSpec::exchangeable(Family::lognormal, 50000, 2, 0.0, 0.25, 0.25, 0.1);
  const auto sample = generate(s, 13);
  CHECK(sample.x().minCoeff() > 0.0);
  CHECK(sample.x().col(0).mean() == doctest::Approx(std::exp(0.125)).epsilon(0.01));
}

TEST_CASE("generator validation") {
  auto s = GeneratorSpec::exchangeable(Family::normal, 10, 2, 0.0, 1.0, 1.0, 0.6);
  s.gamma12(0, 0) = 2.0;  // |cov| above both variances
  CHECK_THROWS_AS(Generator{s}, ValidationError);

  s = GeneratorSpec::exchangeable(Family::normal, 10, 2, 0.0, 1.0, 1.0, 0.6);
  s.gamma1(0, 1) = 0.3;
  CHECK_THROWS_AS(Generator{s}, ValidationError);  // not symmetric

  s = GeneratorSpec::exchangeable(Family::normal, 10, 2, 0.0, 1.0, 1.0, 0.6);
  s.nu1.resize(3);
  s.nu1.setZero();
  CHECK_THROWS_AS(Generator{s}, ValidationError);

  s = GeneratorSpec::exchangeable(Family::normal, 1, 2, 0.0, 1.0, 1.0, 0.6);
  CHECK_THROWS_AS(Generator{s}, ValidationError);

  // Gamma12 = Gamma1 = Gamma2 is singular but PSD and must be accepted.
  s = GeneratorSpec::exchangeable(Family::normal, 10, 2, 0.0, 1.0, 1.0, 1.0);
  const auto sample = generate(s, 1);
  CHECK((sample.x() - sample.y()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("generation is reproducible") {
  const auto s = GeneratorSpec::exchangeable(Family::t3, 20, 4, 1.0, 1.0, 1.2, 0.3);
  CHECK(generate(s, 42).x() == generate(s, 42).x());
  CHECK(generate(s, 42).y() == generate(s, 42).y());
  CHECK(generate(s, 42).x() != generate(s, 43).x());
}

TEST_CASE("study harness") {
  const auto null = GeneratorSpec::exchangeable(Family::normal, 20, 3, 0.0, 1.0, 1.0, 0.5);
  StudyOptions o;
  o.replicates = 40;
  o.k = 3;
  o.seed = 17;
  o.levels = {0.05, 1.0};

  const auto size = run_size_study(null, o);
  CHECK(size.kind == "size");
  CHECK(size.tests.size() == 3);
  for (const auto& t : size.tests) {
    CHECK(t.valid + t.degenerate == 40);
    CHECK(t.proportion(1) == 1.0);
  }
  CHECK(size.proportion("m", 1.0) == 1.0);
  CHECK_THROWS_AS(size.tally("ht"), ValidationError);
  CHECK_THROWS_AS(size.proportion("m", 0.2), ValidationError);

  o.threads = 1;
  const auto again = run_size_study(null, o);
  o.threads = 3;
  const auto threaded = run_size_study(null, o);
  for (std::size_t t = 0; t < 3; ++t) {
    CHECK(again.tests[t].rejections == size.tests[t].rejections);
    CHECK(threaded.tests[t].rejections == size.tests[t].rejections);
  }

  const auto alt = GeneratorSpec::exchangeable(Family::normal, 20, 3, 2.0, 1.0, 1.0, 0.5);
  CHECK_THROWS_AS(run_size_study(alt, o), ValidationError);
  const auto power = run_power_study(alt, o);
  CHECK(power.tests.size() == 4);
  CHECK(power.tally("ht").valid == 40);
  CHECK(power.realized_shift_norm == doctest::Approx(2.0));

  const auto wide = GeneratorSpec::exchangeable(Family::normal, 20, 30, 2.0, 1.0, 1.0, 0.5);
  CHECK(run_power_study(wide, o).tests.size() == 3);

  o.replicates = 0;
  CHECK_THROWS_AS(run_power_study(alt, o), ValidationError);
  o.replicates = 5;
  o.levels = {0.0};
  CHECK_THROWS_AS(run_power_study(alt, o), ValidationError);
}

TEST_SUITE_END();
