#include "core/measures.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/numeric.hpp"

namespace infomeasure {

double q_logarithm(double x, QParameter q) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::domain_error,
                "q_logarithm requires a positive argument, got " +
                    std::to_string(x));
  }
  if (q.is_unit()) return std::log(x);
  const double one_minus_q = 1.0 - q.value();
  return std::expm1(one_minus_q * std::log(x)) / one_minus_q;
}

// 0 log 0 terms never arise below: every sum iterates the support of p only.

double shannon_entropy(const Distribution& p) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc.add(p[i] * std::log(1.0 / p[i]));
  }
  return acc.value();
}

double relative_entropy(const AbsolutelyContinuousPair& pair) {
  const Distribution& p = pair.p();
  const Distribution& r = pair.r();
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc.add(p[i] * std::log(p[i] / r[i]));
  }
  return acc.value();
}

double relative_entropy_extended(const Distribution& p,
                                 const Distribution& r) {
  if (p.size() != r.size()) {
    throw Error(ErrorCode::invalid_argument,
                "p has length " + std::to_string(p.size()) +
                    " but r has length " + std::to_string(r.size()));
  }
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      if (r[i] == 0.0) return std::numeric_limits<double>::infinity();
      acc.add(p[i] * std::log(p[i] / r[i]));
    }
  }
  return acc.value();
}

double q_entropy(const Distribution& p, QParameter q) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc.add(p[i] * q_logarithm(1.0 / p[i], q));
  }
  return acc.value();
}

double q_relative_entropy(const AbsolutelyContinuousPair& pair, QParameter q) {
  const Distribution& p = pair.p();
  const Distribution& r = pair.r();
  CompensatedSum acc;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) acc.add(p[i] * q_logarithm(r[i] / p[i], q));
  }
  return -acc.value();
}

}  // namespace infomeasure
