#include "pairgraph/inference.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "pairgraph/errors.hpp"
#include "pairgraph/rng.hpp"

namespace pairgraph {

double normal_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double chi2_2_sf(double x) { return x <= 0.0 ? 1.0 : std::exp(-0.5 * x); }

AsymptoticPValues asymptotic_pvalues(const StatisticTriple& stats) {
  AsymptoticPValues p;
  if (stats.z_m) p.p_m = normal_sf(*stats.z_m);
  if (stats.z_s) p.p_s = std::min(1.0, 2.0 * normal_sf(std::abs(*stats.z_s)));
  if (stats.z_g) p.p_g = chi2_2_sf(*stats.z_g);
  return p;
}

std::string_view to_string(PermutationMode mode) noexcept {
  return mode == PermutationMode::exact ? "exact" : "monte-carlo";
}

namespace {

struct EdgeSides {
  std::uint32_t pair_u;
  std::uint32_t pair_v;
  bool first_u;  // node u comes from x
  bool first_v;
};

// Integer surrogates that order each statistic exactly:
//   z_m ~ 2S - |G1|,  |z_s| ~ |R1 - R2|,
//   z_g * Q * P = (2S - |G1|)^2 P + 4 (R1 - R2)^2 Q
// with S = R1 + R2, Q = 4 Var(R1 + R2) and P = 4 Var(R1 - R2).
__extension__ typedef __int128 Wide;

struct KeyMaker {
  std::int64_t edges;
  std::int64_t q;
  std::int64_t p;

  std::array<Wide, 3> operator()(std::int64_t r1, std::int64_t r2) const noexcept {
    const Wide centered = 2 * (r1 + r2) - edges;
    const Wide diff = r1 - r2;
    return {centered, diff < 0 ? -diff : diff, centered * centered * p + 4 * diff * diff * q};
  }
};

template <class SwapBit>
std::array<std::int64_t, 2> count_swapped(const std::vector<EdgeSides>& edges, SwapBit swapped) {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  for (const auto& e : edges) {
    const bool one_u = e.first_u != swapped(e.pair_u);
    const bool one_v = e.first_v != swapped(e.pair_v);
    r1 += one_u & one_v;
    r2 += !one_u & !one_v;
  }
  return {r1, r2};
}

}  // namespace

PermutationPValues permutation_pvalues(const PooledIndex& index, const CrossPairGraph& g1,
                                       const NullMoments& moments, const EdgeCounts& observed,
                                       const PermutationOptions& options) {
  const std::size_t n = index.pairs();
  PermutationPValues out;
  out.seed = options.seed;
  out.strict = options.strict;

  bool exact = false;
  switch (options.strategy) {
    case PermutationStrategy::automatic: exact = n <= options.exact_threshold; break;
    case PermutationStrategy::exact:
      if (n > options.exact_threshold || n >= 63) {
        throw ExactTooLarge("exact enumeration requested for " + std::to_string(n) +
                            " pairs; the threshold is " + std::to_string(options.exact_threshold));
      }
      exact = true;
      break;
    case PermutationStrategy::monte_carlo: exact = false; break;
  }
  if (exact && n >= 63) exact = false;
  if (!exact && options.n_perm < 1) {
    throw ValidationError("Monte Carlo permutation needs at least one draw");
  }

  std::vector<EdgeSides> edges;
  edges.reserve(g1.edges().size());
  for (const auto& e : g1.edges()) {
    edges.push_back({static_cast<std::uint32_t>(index.pair_of(e.u)),
                     static_cast<std::uint32_t>(index.pair_of(e.v)), index.from_first_sample(e.u),
                     index.from_first_sample(e.v)});
  }

  const KeyMaker keys{moments.edge_count, moments.structure_sum, moments.degree_diff_sq};
  const auto target = keys(observed.r1, observed.r2);
  const bool strict = options.strict;
  auto exceeds = [&](const std::array<Wide, 3>& k, std::size_t which) {
    return strict ? k[which] > target[which] : k[which] >= target[which];
  };

  const std::uint64_t total = exact ? (std::uint64_t{1} << n) : options.n_perm;
  std::mutex hits_guard;
  std::array<std::uint64_t, 3> hits{0, 0, 0};

  parallel_chunks(
      total,
      [&](std::size_t begin, std::size_t end) {
        std::array<std::uint64_t, 3> local{0, 0, 0};
        std::vector<std::uint64_t> words((n + 63) / 64);
        for (std::size_t b = begin; b < end; ++b) {
          std::array<std::int64_t, 2> r;
          if (exact) {
            const std::uint64_t mask = b;
            r = count_swapped(edges, [mask](std::uint32_t p) { return ((mask >> p) & 1U) != 0; });
          } else {
            SplitMix64 rng(stream_seed(options.seed, b));
            for (auto& w : words) w = rng();
            r = count_swapped(
                edges, [&words](std::uint32_t p) { return ((words[p >> 6] >> (p & 63)) & 1U) != 0; });
          }
          const auto k = keys(r[0], r[1]);
          for (std::size_t t = 0; t < 3; ++t) local[t] += exceeds(k, t);
        }
        std::lock_guard lock(hits_guard);
        for (std::size_t t = 0; t < 3; ++t) hits[t] += local[t];
      },
      options.threads);

  const double denom = exact ? static_cast<double>(total) : static_cast<double>(total + 1);
  auto pvalue = [&](std::size_t t) {
    return exact ? static_cast<double>(hits[t]) / denom : static_cast<double>(hits[t] + 1) / denom;
  };
  const bool mean_ok = moments.var_sum >= kDegenerateTolerance;
  const bool scale_ok = moments.var_diff >= kDegenerateTolerance;
  if (mean_ok) out.p_m = pvalue(0);
  if (scale_ok) out.p_s = pvalue(1);
  if (mean_ok && scale_ok) out.p_g = pvalue(2);
  out.n_permutations = total;
  out.mode = exact ? PermutationMode::exact : PermutationMode::monte_carlo;
  return out;
}

}  // namespace pairgraph
