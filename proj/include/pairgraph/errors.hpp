#pragma once

#include <stdexcept>
#include <string>

namespace pairgraph {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (shape, non-finite values, bad options).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// No spanning tree exists at a given k-MST level.
class DisconnectedError : public Error {
 public:
  DisconnectedError(int level, const std::string& what)
      : Error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

/// A requested statistic has zero null variance.
class DegenerateNullError : public Error {
 public:
  DegenerateNullError(bool mean, bool scale, bool generic, const std::string& what)
      : Error(what), mean_(mean), scale_(scale), generic_(generic) {}
  bool mean_degenerate() const noexcept { return mean_; }
  bool scale_degenerate() const noexcept { return scale_; }
  bool generic_degenerate() const noexcept { return generic_; }

 private:
  bool mean_, scale_, generic_;
};

/// Exact enumeration requested for more pairs than the configured threshold.
class ExactTooLarge : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Hotelling's T^2 needs more pairs than dimensions.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

class ZeroVariance : public Error {
 public:
  using Error::Error;
};

}  // namespace pairgraph
