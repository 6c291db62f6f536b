#pragma once

// Classical comparison tests: paired Hotelling's T^2 and per-variable paired t.

#include <cstddef>
#include <span>
#include <vector>

#include "pairgraph/core.hpp"

namespace pairgraph {

struct HotellingReport {
  double t2 = 0.0;
  double f_stat = 0.0;
  std::size_t df1 = 0;  // d
  std::size_t df2 = 0;  // n - d
  double p = 1.0;
};

/// T^2 = n Dbar' S^{-1} Dbar on the differences D_i = X_i - Y_i, with S the
/// unbiased covariance, referred to F(d, n - d) via F = T^2 (n - d) / (d (n - 1)).
/// Throws DimensionError when d >= n, SingularCovariance when S has
/// reciprocal condition number below 1e-12. All-zero differences give T^2 = 0, p = 1.
HotellingReport hotelling_paired(const PairedSample& sample);

struct TTestResult {
  double t = 0.0;
  double p = 1.0;  // two-sided, Student t with n - 1 df
};

/// Throws ValidationError for n < 2 or length mismatch, ZeroVariance when the
/// differences are constant but not all zero. Identical inputs give t = 0, p = 1.
TTestResult paired_t_test(std::span<const double> x, std::span<const double> y);

/// Rejects j iff pvals[j] <= alpha / pvals.size().
std::vector<bool> bonferroni(std::span<const double> pvals, double alpha);

}  // namespace pairgraph
