#include "pairgraph/statistics.hpp"

#include <cmath>
#include <string>

#include "pairgraph/errors.hpp"

namespace pairgraph {

std::string_view to_string(TestKind kind) noexcept {
  switch (kind) {
    case TestKind::mean: return "mean";
    case TestKind::scale: return "scale";
    case TestKind::generic: return "generic";
  }
  return "unknown";
}

EdgeCounts count_edges(const CrossPairGraph& g1, const Assignment& assignment) {
  if (assignment.size() != g1.degrees().size()) {
    throw ValidationError("assignment covers " + std::to_string(assignment.size()) +
                          " nodes, graph has " + std::to_string(g1.degrees().size()));
  }
  EdgeCounts c;
  for (const auto& e : g1.edges()) {
    const auto gu = assignment[e.u];
    if (gu != assignment[e.v]) continue;
    if (gu == 1) {
      ++c.r1;
    } else {
      ++c.r2;
    }
  }
  return c;
}

std::optional<double> StatisticTriple::get(TestKind kind) const noexcept {
  switch (kind) {
    case TestKind::mean: return z_m;
    case TestKind::scale: return z_s;
    case TestKind::generic: return z_g;
  }
  return std::nullopt;
}

double StatisticTriple::value(TestKind kind) const {
  if (auto v = get(kind)) return *v;
  throw DegenerateNullError(mean_degenerate(), scale_degenerate(), generic_degenerate(),
                            "the " + std::string(to_string(kind)) +
                                " statistic is undefined: its null variance is zero "
                                "(try a larger k)");
}

StatisticTriple statistics(const EdgeCounts& counts, const NullMoments& moments) {
  StatisticTriple s;
  const double r1 = static_cast<double>(counts.r1);
  const double r2 = static_cast<double>(counts.r2);
  if (moments.var_sum >= kDegenerateTolerance) {
    s.z_m = (r1 + r2 - moments.e_sum()) / std::sqrt(moments.var_sum);
  }
  if (moments.var_diff >= kDegenerateTolerance) {
    s.z_s = (r1 - r2) / std::sqrt(moments.var_diff);
  }
  const double v = moments.var_r1;
  const double c = moments.cov_r12;
  const double det = v * v - c * c;
  if (s.z_m && s.z_s && det >= kDegenerateTolerance) {
    const double a = r1 - moments.e_r1;
    const double b = r2 - moments.e_r1;
    // [a b] * adj(Sigma_R) * [a b]' / det(Sigma_R)
    s.z_g = (a * a * v - 2.0 * a * b * c + b * b * v) / det;
  }
  return s;
}

}  // namespace pairgraph
