#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "pairgraph/core.hpp"
#include "pairgraph/null_moments.hpp"

namespace pairgraph {

/// Variances below this are treated as zero.
inline constexpr double kDegenerateTolerance = 1e-12;

enum class TestKind { mean, scale, generic };

std::string_view to_string(TestKind kind) noexcept;

struct EdgeCounts {
  std::int64_t r1 = 0;  // G1 edges with both endpoints labeled 1
  std::int64_t r2 = 0;  // G1 edges with both endpoints labeled 2
};

/// Throws ValidationError if the assignment length differs from the node count.
EdgeCounts count_edges(const CrossPairGraph& g1, const Assignment& assignment);

struct StatisticTriple {
  std::optional<double> z_m;
  std::optional<double> z_s;
  std::optional<double> z_g;

  bool mean_degenerate() const noexcept { return !z_m; }
  bool scale_degenerate() const noexcept { return !z_s; }
  bool generic_degenerate() const noexcept { return !z_g; }

  std::optional<double> get(TestKind kind) const noexcept;
  /// Throws DegenerateNullError when the statistic is undefined.
  double value(TestKind kind) const;
};

/// Paired mean, scale and generic statistics:
///   z_m = (R1 + R2 - |G1|/2) / sqrt(Var(R1 + R2))
///   z_s = (R1 - R2) / sqrt(Var(R1 - R2))
///   z_g = (R - E R)' Sigma_R^{-1} (R - E R), Sigma_R inverted through its adjugate.
StatisticTriple statistics(const EdgeCounts& counts, const NullMoments& moments);

}  // namespace pairgraph
