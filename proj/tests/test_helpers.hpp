#pragma once

// Test-only oracles and fixtures.  The oracles deliberately avoid the
// library's computation paths: quadrature for the q-logarithm, long-double
// closed forms for the entropies.

#include <cmath>
#include <cstddef>
#include <vector>

#include "core/distribution.hpp"
#include "core/measure.hpp"

namespace oracles {

namespace detail {

template <typename F>
long double simpson(F&& f, long double a, long double b) {
  const long double mid = (a + b) / 2;
  return (b - a) / 6 * (f(a) + 4 * f(mid) + f(b));
}

template <typename F>
long double adaptive(F&& f, long double a, long double b, long double whole,
                     long double eps, int depth) {
  const long double mid = (a + b) / 2;
  const long double left = simpson(f, a, mid);
  const long double right = simpson(f, mid, b);
  const long double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * eps) {
    return left + right + delta / 15;
  }
  return adaptive(f, a, mid, left, eps / 2, depth - 1) +
         adaptive(f, mid, b, right, eps / 2, depth - 1);
}

}  // namespace detail

/// High-precision quadrature of the integral of t^(-q) dt from 1 to x.
inline double quadrature_q_log(double x, double q) {
  const auto f = [q](long double t) {
    return std::pow(t, static_cast<long double>(-q));
  };
  const long double a = 1.0L;
  const long double b = x;
  return static_cast<double>(
      detail::adaptive(f, a, b, detail::simpson(f, a, b), 1e-16L, 60));
}

inline double shannon(const std::vector<double>& p) {
  long double s = 0.0L;
  for (double x : p) {
    if (x > 0.0) s += static_cast<long double>(x) * std::log(1.0L / x);
  }
  return static_cast<double>(s);
}

inline double kl(const std::vector<double>& p, const std::vector<double>& r) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      s += static_cast<long double>(p[i]) *
           std::log(static_cast<long double>(p[i]) / r[i]);
    }
  }
  return static_cast<double>(s);
}

/// (sum over support of p_i^q - 1) / (1 - q), the closed form.
inline double q_entropy(const std::vector<double>& p, double q) {
  if (q == 1.0) return shannon(p);
  long double s = 0.0L;
  for (double x : p) {
    if (x > 0.0) s += std::pow(static_cast<long double>(x), q);
  }
  return static_cast<double>((s - 1.0L) / (1.0L - q));
}

/// (sum over support of p_i^q r_i^(1-q) - 1) / (q - 1), the closed form.
inline double q_kl(const std::vector<double>& p, const std::vector<double>& r,
                   double q) {
  if (q == 1.0) return kl(p, r);
  long double s = 0.0L;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) {
      s += std::pow(static_cast<long double>(p[i]), q) *
           std::pow(static_cast<long double>(r[i]), 1.0L - q);
    }
  }
  return static_cast<double>((s - 1.0L) / (q - 1.0L));
}

}  // namespace oracles

namespace fixtures {

/// Index-weighted sum (1*p_1 + 2*p_2 + ...): deliberately asymmetric.
inline infomeasure::Measure index_weighted() {
  return infomeasure::Measure::entropy(
      "index-weighted", [](const infomeasure::Distribution& p) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (p[i] > 0.0) s += static_cast<double>(i + 1) * p[i];
        }
        return s;
      });
}

/// The square of relative entropy: symmetric and vanishing, but squaring
/// breaks the additivity of the chain rule.
inline infomeasure::Measure squared_kl() {
  return infomeasure::Measure::divergence(
      "squared-kl", [](const infomeasure::AbsolutelyContinuousPair& pair) {
        const double d = infomeasure::relative_entropy(pair);
        return d * d;
      });
}

}  // namespace fixtures
