#include "core/distribution.hpp"

#include <cmath>
#include <string>

#include "core/numeric.hpp"

namespace infomeasure {

namespace {

void validate_weights(const std::vector<double>& w) {
  if (w.empty()) {
    throw Error(ErrorCode::invalid_argument, "distribution must be nonempty");
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "weight at index " + std::to_string(i) + " is not finite");
    }
    if (w[i] < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "weight at index " + std::to_string(i) + " is negative (" +
                      std::to_string(w[i]) + ")");
    }
  }
  const double total = compensated_total(w);
  if (std::fabs(total - 1.0) > kSimplexSumTolerance) {
    throw Error(ErrorCode::invalid_argument,
                "weights sum to " + std::to_string(total) +
                    ", expected 1 within " +
                    std::to_string(kSimplexSumTolerance));
  }
  bool has_support = false;
  for (double x : w) {
    if (x > 0.0) {
      has_support = true;
      break;
    }
  }
  if (!has_support) {
    throw Error(ErrorCode::invalid_argument,
                "distribution has empty support");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  validate_weights(weights_);
}

Distribution Distribution::normalized(std::vector<double> weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::invalid_argument, "distribution must be nonempty");
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!std::isfinite(weights[i]) || weights[i] < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "weight at index " + std::to_string(i) +
                      " is not a finite nonnegative number");
    }
    acc.add(weights[i]);
  }
  const double total = acc.value();
  if (!(total > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "cannot normalize weights with zero total mass");
  }
  for (double& x : weights) x /= total;
  return Distribution(std::move(weights));
}

std::vector<std::size_t> Distribution::support() const {
  std::vector<std::size_t> idx;
  idx.reserve(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > 0.0) idx.push_back(i);
  }
  return idx;
}

std::size_t Distribution::support_size() const {
  std::size_t k = 0;
  for (double x : weights_) {
    if (x > 0.0) ++k;
  }
  return k;
}

AbsolutelyContinuousPair::AbsolutelyContinuousPair(Distribution p,
                                                   Distribution r)
    : p_(std::move(p)), r_(std::move(r)) {
  if (p_.size() != r_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "p has length " + std::to_string(p_.size()) +
                    " but r has length " + std::to_string(r_.size()));
  }
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (r_[i] == 0.0 && p_[i] > 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "absolute continuity violated at index " +
                      std::to_string(i) + ": p > 0 but r = 0");
    }
  }
}

}  // namespace infomeasure
