#pragma once

#include <cmath>

#include "core/distribution.hpp"

namespace infomeasure {

/// Deformation parameter of the q-logarithm.  |q - 1| <= 1e-12 selects the
/// logarithmic branch, where all q-deformed quantities reduce to their
/// Shannon counterparts.
class QParameter {
public:
  QParameter(double q) : q_(q) {  // NOLINT: implicit by design, q is a value
    if (!std::isfinite(q)) {
      throw Error(ErrorCode::invalid_argument, "q must be a finite real");
    }
  }

  double value() const { return q_; }
  bool is_unit() const { return std::fabs(q_ - 1.0) <= 1e-12; }

private:
  double q_;
};

/// ln_q(x) = integral of t^(-q) dt from 1 to x, for x > 0.
///
/// Equals the natural log on the unit branch; otherwise computed as
/// expm1((1-q) log x) / (1-q), which stays accurate as q -> 1 where the
/// textbook form (x^(1-q) - 1)/(1-q) cancels catastrophically.
double q_logarithm(double x, QParameter q);

/// H(p) = sum over support of p_i log(1/p_i).
double shannon_entropy(const Distribution& p);

/// D(p||r) = sum over the support of p of p_i log(p_i/r_i).  Finite and
/// nonnegative; zero exactly when p = r on the support of p.
double relative_entropy(const AbsolutelyContinuousPair& pair);

/// Relative entropy on arbitrary equal-length distributions, valued in
/// [0, +inf]: +inf exactly when some index has p_i > 0 and r_i = 0.
double relative_entropy_extended(const Distribution& p, const Distribution& r);

/// S_q(p) = sum over support of p_i ln_q(1/p_i).
double q_entropy(const Distribution& p, QParameter q);

/// D_q(p||r) = -sum over the support of p of p_i ln_q(r_i/p_i).
double q_relative_entropy(const AbsolutelyContinuousPair& pair, QParameter q);

}  // namespace infomeasure
