#include "pairgraph/simulation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <boost/random/chi_squared_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <optional>

#include "pairgraph/analysis.hpp"
#include "pairgraph/baselines.hpp"
#include "pairgraph/errors.hpp"
#include "pairgraph/inference.hpp"

namespace pairgraph {

Family parse_family(std::string_view tag) {
  if (tag == "normal") return Family::normal;
  if (tag == "t3") return Family::t3;
  if (tag == "lognormal") return Family::lognormal;
  throw ValidationError("unknown family '" + std::string(tag) + "'");
}

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::normal: return "normal";
    case Family::t3: return "t3";
    case Family::lognormal: return "lognormal";
  }
  return "unknown";
}

GeneratorSpec GeneratorSpec::exchangeable(Family family, std::size_t n, std::size_t d,
                                          double mean_shift, double var1, double var2,
                                          double cov12) {
  GeneratorSpec s;
  s.family = family;
  s.n = n;
  s.d = d;
  const auto dim = static_cast<Eigen::Index>(d);
  s.nu2 = Eigen::VectorXd::Zero(dim);
  s.nu1 = Eigen::VectorXd::Constant(dim, d > 0 ? mean_shift / std::sqrt(static_cast<double>(d)) : 0.0);
  s.gamma1 = var1 * Eigen::MatrixXd::Identity(dim, dim);
  s.gamma2 = var2 * Eigen::MatrixXd::Identity(dim, dim);
  s.gamma12 = cov12 * Eigen::MatrixXd::Identity(dim, dim);
  return s;
}

Eigen::MatrixXd GeneratorSpec::gamma() const {
  const auto dim = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd g(2 * dim, 2 * dim);
  g.topLeftCorner(dim, dim) = gamma1;
  g.topRightCorner(dim, dim) = gamma12;
  g.bottomLeftCorner(dim, dim) = gamma12.transpose();
  g.bottomRightCorner(dim, dim) = gamma2;
  return g;
}

Eigen::VectorXd GeneratorSpec::nu() const {
  Eigen::VectorXd v(nu1.size() + nu2.size());
  v << nu1, nu2;
  return v;
}

bool GeneratorSpec::is_null() const { return nu1 == nu2 && gamma1 == gamma2; }

Generator::Generator(GeneratorSpec spec) : spec_(std::move(spec)) {
  const auto dim = static_cast<Eigen::Index>(spec_.d);
  if (spec_.n < 2 || spec_.d < 1) throw ValidationError("generator needs n >= 2 and d >= 1");
  if (spec_.nu1.size() != dim || spec_.nu2.size() != dim) {
    throw ValidationError("mean vectors must have length d");
  }
  for (const auto* block : {&spec_.gamma1, &spec_.gamma2, &spec_.gamma12}) {
    if (block->rows() != dim || block->cols() != dim) {
      throw ValidationError("covariance blocks must be d x d");
    }
  }
  const Eigen::MatrixXd g = spec_.gamma();
  if (!g.allFinite() || !spec_.nu().allFinite()) {
    throw ValidationError("generator parameters must be finite");
  }
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("Gamma is not symmetric");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() == Eigen::Success) {
    factor_ = llt.matrixL();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    if (eig.info() != Eigen::Success || eig.eigenvalues().minCoeff() < -1e-10 * scale) {
      throw ValidationError("Gamma is not positive semi-definite");
    }
    const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    factor_ = eig.eigenvectors() * root.asDiagonal();
  }
  if (spec_.family == Family::t3) factor_ /= std::sqrt(3.0);
  nu_ = spec_.nu();
}

PairedSample Generator::draw(Xoshiro256StarStar& rng) const {
  const auto dim = static_cast<Eigen::Index>(spec_.d);
  const auto n = static_cast<Eigen::Index>(spec_.n);
  boost::random::normal_distribution<double> normal;
  Eigen::MatrixXd z(2 * dim, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < 2 * dim; ++i) z(i, j) = normal(rng);
  }
  Eigen::MatrixXd v = factor_ * z;
  if (spec_.family == Family::t3) {
    boost::random::chi_squared_distribution<double> chi2(3.0);
    for (Eigen::Index j = 0; j < n; ++j) v.col(j) /= std::sqrt(chi2(rng) / 3.0);
  }
  v.colwise() += nu_;
  if (spec_.family == Family::lognormal) v = v.array().exp().matrix();

  Matrix x = v.topRows(dim).transpose();
  Matrix y = v.bottomRows(dim).transpose();
  return PairedSample(std::move(x), std::move(y));
}

PairedSample generate(const GeneratorSpec& spec, std::uint64_t seed) {
  Xoshiro256StarStar rng(stream_seed(seed, 0));
  return Generator(spec).draw(rng);
}

double TestTally::proportion(std::size_t level_index) const {
  return valid == 0 ? 0.0
                    : static_cast<double>(rejections.at(level_index)) / static_cast<double>(valid);
}

const TestTally& StudyResult::tally(std::string_view test) const {
  for (const auto& t : tests) {
    if (t.test == test) return t;
  }
  throw ValidationError("study has no results for test '" + std::string(test) + "'");
}

double StudyResult::proportion(std::string_view test, double level) const {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] == level) return tally(test).proportion(i);
  }
  throw ValidationError("study has no results at level " + std::to_string(level));
}

namespace {

struct ReplicateOutcome {
  std::optional<double> p[4];  // m, s, g, ht
};

StudyResult run_study(const GeneratorSpec& spec, const StudyOptions& options, std::string scenario,
                      std::string kind, bool with_hotelling) {
  if (options.replicates < 1) throw ValidationError("replicates must be at least 1");
  if (options.levels.empty()) throw ValidationError("at least one nominal level is required");
  for (double a : options.levels) {
    if (!(a > 0.0 && a <= 1.0)) throw ValidationError("nominal levels must lie in (0, 1]");
  }
  const Generator generator(spec);
  std::vector<ReplicateOutcome> outcomes(options.replicates);

  parallel_chunks(
      options.replicates,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
          Xoshiro256StarStar rng(stream_seed(options.seed, r));
          const auto sample = generator.draw(rng);
          const auto analysis = analyze_sample(sample, options.k, options.metric);
          const auto p = asymptotic_pvalues(analysis.stats);
          auto& out = outcomes[r];
          out.p[0] = p.p_m;
          out.p[1] = p.p_s;
          out.p[2] = p.p_g;
          if (with_hotelling) {
            try {
              out.p[3] = hotelling_paired(sample).p;
            } catch (const SingularCovariance&) {
            }
          }
        }
      },
      options.threads);

  StudyResult result;
  result.scenario = std::move(scenario);
  result.kind = std::move(kind);
  result.replicates = options.replicates;
  result.seed = options.seed;
  result.levels = options.levels;
  result.realized_shift_norm = spec.mean_shift_norm();
  const char* names[4] = {"m", "s", "g", "ht"};
  const std::size_t tests = with_hotelling ? 4 : 3;
  for (std::size_t t = 0; t < tests; ++t) {
    TestTally tally;
    tally.test = names[t];
    tally.rejections.assign(options.levels.size(), 0);
    for (const auto& o : outcomes) {
      if (!o.p[t]) {
        ++tally.degenerate;
        continue;
      }
      ++tally.valid;
      for (std::size_t l = 0; l < options.levels.size(); ++l) {
        if (*o.p[t] <= options.levels[l]) ++tally.rejections[l];
      }
    }
    result.tests.push_back(std::move(tally));
  }
  return result;
}

}  // namespace

StudyResult run_size_study(const GeneratorSpec& spec, const StudyOptions& options,
                           std::string scenario) {
  if (!spec.is_null()) {
    throw ValidationError("size study needs identical marginals (nu1 == nu2, Gamma1 == Gamma2)");
  }
  return run_study(spec, options, std::move(scenario), "size", false);
}

StudyResult run_power_study(const GeneratorSpec& spec, const StudyOptions& options,
                            std::string scenario) {
  const bool ht = options.hotelling && spec.d < spec.n;
  return run_study(spec, options, std::move(scenario), "power", ht);
}

}  // namespace pairgraph
