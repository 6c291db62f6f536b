#include "pairgraph/core.hpp"

#include <cmath>
#include <string>

#include "pairgraph/errors.hpp"

namespace pairgraph {

namespace {

void require_finite(const Matrix& m, const char* name) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (!std::isfinite(m(r, c))) {
        throw ValidationError("non-finite value in " + std::string(name) + " at pair " +
                              std::to_string(r + 1) + ", column " + std::to_string(c + 1));
      }
    }
  }
}

}  // namespace

PairedSample::PairedSample(Matrix x, Matrix y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.rows() || x_.cols() != y_.cols()) {
    throw ValidationError("x and y must have identical shape, got " + std::to_string(x_.rows()) +
                          "x" + std::to_string(x_.cols()) + " and " + std::to_string(y_.rows()) +
                          "x" + std::to_string(y_.cols()));
  }
  if (x_.rows() < 2) throw ValidationError("at least 2 pairs are required");
  if (x_.cols() < 1) throw ValidationError("dimension must be at least 1");
  require_finite(x_, "x");
  require_finite(y_, "y");
}

PooledIndex::PooledIndex(std::size_t pairs) : pairs_(pairs) {
  if (pairs == 0) throw ValidationError("pooled index needs at least one pair");
}

Assignment::Assignment(const PooledIndex& index, std::vector<std::uint8_t> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() != index.nodes()) {
    throw ValidationError("assignment length " + std::to_string(labels_.size()) +
                          " does not match node count " + std::to_string(index.nodes()));
  }
  for (std::size_t i = 0; i < index.pairs(); ++i) {
    const auto a = labels_[i];
    const auto b = labels_[index.partner(i)];
    if ((a != 1 && a != 2) || a + b != 3) {
      throw ValidationError("pair " + std::to_string(i + 1) +
                            " must carry exactly one label 1 and one label 2");
    }
  }
}

Assignment Assignment::from_swaps(const PooledIndex& index, const std::vector<bool>& swapped) {
  if (swapped.size() != index.pairs()) {
    throw ValidationError("swap vector length does not match pair count");
  }
  Assignment a;
  a.labels_.resize(index.nodes());
  for (std::size_t i = 0; i < index.pairs(); ++i) {
    a.labels_[i] = swapped[i] ? 2 : 1;
    a.labels_[index.partner(i)] = swapped[i] ? 1 : 2;
  }
  return a;
}

Assignment Assignment::flipped() const {
  Assignment a;
  a.labels_.reserve(labels_.size());
  for (auto g : labels_) a.labels_.push_back(static_cast<std::uint8_t>(3 - g));
  return a;
}

PooledSample pool(const PairedSample& sample) {
  const auto n = static_cast<Eigen::Index>(sample.pairs());
  Matrix points(2 * n, sample.x().cols());
  points.topRows(n) = sample.x();
  points.bottomRows(n) = sample.y();
  return {std::move(points), PooledIndex(sample.pairs())};
}

Assignment identity_assignment(const PooledIndex& index) {
  std::vector<std::uint8_t> labels(index.nodes());
  for (std::size_t i = 0; i < index.nodes(); ++i) labels[i] = index.from_first_sample(i) ? 1 : 2;
  return Assignment(index, std::move(labels));
}

}  // namespace pairgraph
