#include "pairgraph/baselines.hpp"

#include <Eigen/Cholesky>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <cmath>
#include <string>

#include "pairgraph/errors.hpp"

namespace pairgraph {

HotellingReport hotelling_paired(const PairedSample& sample) {
  const std::size_t n = sample.pairs();
  const std::size_t d = sample.dim();
  if (d >= n) {
    throw DimensionError("Hotelling's T^2 needs more pairs than dimensions (n = " +
                         std::to_string(n) + ", d = " + std::to_string(d) + ")");
  }
  const Eigen::MatrixXd diff = sample.x() - sample.y();
  HotellingReport r;
  r.df1 = d;
  r.df2 = n - d;
  if (diff.isZero(0.0)) return r;

  const Eigen::VectorXd mean = diff.colwise().mean();
  const Eigen::MatrixXd centered = diff.rowwise() - mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success || llt.rcond() < 1e-12) {
    throw SingularCovariance("sample covariance of the paired differences is singular");
  }
  r.t2 = static_cast<double>(n) * mean.dot(llt.solve(mean));
  r.f_stat = r.t2 * static_cast<double>(n - d) / (static_cast<double>(d) * static_cast<double>(n - 1));
  const boost::math::fisher_f dist(static_cast<double>(r.df1), static_cast<double>(r.df2));
  r.p = boost::math::cdf(boost::math::complement(dist, r.f_stat));
  return r;
}

TTestResult paired_t_test(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("paired t-test needs equal-length inputs");
  const std::size_t n = x.size();
  if (n < 2) throw ValidationError("paired t-test needs at least 2 pairs");

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += x[i] - y[i];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = x[i] - y[i];
    all_zero = all_zero && di == 0.0;
    ss += (di - mean) * (di - mean);
  }
  if (all_zero) return {};
  if (ss == 0.0) throw ZeroVariance("paired differences have zero variance");

  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  TTestResult r;
  r.t = mean / (sd / std::sqrt(static_cast<double>(n)));
  const boost::math::students_t dist(static_cast<double>(n - 1));
  r.p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(r.t)));
  return r;
}

std::vector<bool> bonferroni(std::span<const double> pvals, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in (0, 1]");
  std::vector<bool> out(pvals.size(), false);
  const double cut = alpha / static_cast<double>(pvals.size());
  for (std::size_t j = 0; j < pvals.size(); ++j) {
    if (!(pvals[j] >= 0.0 && pvals[j] <= 1.0)) {
      throw ValidationError("p-value " + std::to_string(j + 1) + " is outside [0, 1]");
    }
    out[j] = pvals[j] <= cut;
  }
  return out;
}

}  // namespace pairgraph
