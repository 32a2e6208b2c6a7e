#pragma once

#include <cstddef>
#include <vector>

#include "core/error.hpp"

namespace infomeasure {

/// Tolerance for |sum(weights) - 1| when validating a distribution.
inline constexpr double kSimplexSumTolerance = 1e-9;

/// A point of the probability simplex: nonnegative weights summing to 1
/// within kSimplexSumTolerance, with at least one strictly positive entry.
/// Weights are stored exactly as given; use `normalized` to rescale.
class Distribution {
public:
  explicit Distribution(std::vector<double> weights);

  /// Rescales `weights` by their sum (which must be positive), then validates.
  static Distribution normalized(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }

  /// Indices with strictly positive weight, ascending.
  std::vector<std::size_t> support() const;
  std::size_t support_size() const;

  bool operator==(const Distribution& other) const = default;

private:
  std::vector<double> weights_;
};

/// A pair (p, r) of equal-length distributions with p absolutely continuous
/// with respect to r: p_i = 0 whenever r_i = 0.  Exactly the pairs on which
/// relative entropy is finite.
class AbsolutelyContinuousPair {
public:
  AbsolutelyContinuousPair(Distribution p, Distribution r);

  const Distribution& p() const { return p_; }
  const Distribution& r() const { return r_; }
  std::size_t size() const { return p_.size(); }

  bool operator==(const AbsolutelyContinuousPair& other) const = default;

private:
  Distribution p_;
  Distribution r_;
};

}  // namespace infomeasure
