#pragma once

// Domain types shared by every module.
//
// Storage is 0-based: pair i (0 <= i < n) owns pooled nodes i and i + n.
// Anything user-facing (CSV, JSON, error messages) reports 1-based indices.

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pairgraph {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n pairs of d-dimensional observations; x holds sample 1, y sample 2.
class PairedSample {
 public:
  /// Throws ValidationError on shape mismatch, n < 2, d < 1 or non-finite entries.
  PairedSample(Matrix x, Matrix y);

  const Matrix& x() const noexcept { return x_; }
  const Matrix& y() const noexcept { return y_; }
  std::size_t pairs() const noexcept { return static_cast<std::size_t>(x_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(x_.cols()); }

 private:
  Matrix x_;
  Matrix y_;
};

/// Pooled node numbering with the partner involution i <-> i*.
class PooledIndex {
 public:
  explicit PooledIndex(std::size_t pairs);

  std::size_t pairs() const noexcept { return pairs_; }
  std::size_t nodes() const noexcept { return 2 * pairs_; }

  std::size_t partner(std::size_t node) const noexcept {
    return node < pairs_ ? node + pairs_ : node - pairs_;
  }
  std::size_t pair_of(std::size_t node) const noexcept {
    return node < pairs_ ? node : node - pairs_;
  }
  /// True for nodes drawn from x (the first n pooled rows).
  bool from_first_sample(std::size_t node) const noexcept { return node < pairs_; }

  friend bool operator==(const PooledIndex&, const PooledIndex&) = default;

 private:
  std::size_t pairs_;
};

/// Sample labels (1 or 2) for every pooled node; partners always differ.
class Assignment {
 public:
  /// Throws ValidationError if labels are not a valid within-pair split.
  Assignment(const PooledIndex& index, std::vector<std::uint8_t> labels);

  /// Observed labeling with pair i swapped whenever swapped[i] is true.
  static Assignment from_swaps(const PooledIndex& index, const std::vector<bool>& swapped);

  std::uint8_t operator[](std::size_t node) const noexcept { return labels_[node]; }
  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::uint8_t>& labels() const noexcept { return labels_; }

  /// Same partition with labels 1 and 2 exchanged.
  Assignment flipped() const;

 private:
  Assignment() = default;
  std::vector<std::uint8_t> labels_;
};

struct PooledSample {
  Matrix points;  // N x d, rows 0..n-1 are x, rows n..2n-1 are y
  PooledIndex index;
};

PooledSample pool(const PairedSample& sample);

/// g(i) = 1 for the first n nodes, 2 otherwise.
Assignment identity_assignment(const PooledIndex& index);

}  // namespace pairgraph
