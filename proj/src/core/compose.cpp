#include "core/compose.hpp"

#include <string>
#include <utility>

#include "core/numeric.hpp"

namespace infomeasure {

Permutation::Permutation(std::vector<std::size_t> mapping)
    : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (std::size_t i : mapping_) {
    if (i >= mapping_.size() || seen[i]) {
      throw Error(ErrorCode::invalid_argument,
                  "permutation is not a bijection of {0..n-1}");
    }
    seen[i] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> mapping(n);
  for (std::size_t i = 0; i < n; ++i) mapping[i] = i;
  return Permutation(std::move(mapping));
}

Distribution compose(const Distribution& w,
                     const std::vector<Distribution>& parts) {
  if (parts.size() != w.size()) {
    throw Error(ErrorCode::invalid_argument,
                "compose needs one part per weight: got " +
                    std::to_string(parts.size()) + " parts for " +
                    std::to_string(w.size()) + " weights");
  }
  std::size_t total = 0;
  for (const Distribution& part : parts) total += part.size();
  std::vector<double> out;
  out.reserve(total);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < parts[i].size(); ++j) {
      out.push_back(w[i] * parts[i][j]);
    }
  }
  return Distribution(std::move(out));
}

Distribution tensor(const Distribution& w, const Distribution& p) {
  return compose(w, std::vector<Distribution>(w.size(), p));
}

Distribution direct_sum(double w, const Distribution& p,
                        const Distribution& r) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorCode::invalid_argument,
                "direct_sum weight must lie in [0, 1]");
  }
  return compose(Distribution({w, 1.0 - w}), {p, r});
}

Distribution permute(const Distribution& p, const Permutation& sigma) {
  if (sigma.size() != p.size()) {
    throw Error(ErrorCode::invalid_argument,
                "permutation length " + std::to_string(sigma.size()) +
                    " does not match distribution length " +
                    std::to_string(p.size()));
  }
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[sigma[i]];
  return Distribution(std::move(out));
}

AbsolutelyContinuousPair permute(const AbsolutelyContinuousPair& pair,
                                 const Permutation& sigma) {
  return {permute(pair.p(), sigma), permute(pair.r(), sigma)};
}

AbsolutelyContinuousPair pair_compose(
    const AbsolutelyContinuousPair& w,
    const std::vector<AbsolutelyContinuousPair>& parts) {
  if (parts.size() != w.size()) {
    throw Error(ErrorCode::invalid_argument,
                "pair_compose needs one part pair per weight: got " +
                    std::to_string(parts.size()) + " parts for " +
                    std::to_string(w.size()) + " weights");
  }
  std::vector<Distribution> p_parts;
  std::vector<Distribution> r_parts;
  p_parts.reserve(parts.size());
  r_parts.reserve(parts.size());
  for (const AbsolutelyContinuousPair& part : parts) {
    p_parts.push_back(part.p());
    r_parts.push_back(part.r());
  }
  return {compose(w.p(), p_parts), compose(w.r(), r_parts)};
}

ZeroBlockDecomposition decompose_zeros(const AbsolutelyContinuousPair& pair) {
  const Distribution& p = pair.p();
  const Distribution& r = pair.r();
  const std::size_t n = p.size();

  // Stable front permutation: support of p first, zeros after, original
  // order preserved within each group.
  std::vector<std::size_t> mapping;
  mapping.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] > 0.0) mapping.push_back(i);
  }
  const std::size_t k = mapping.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p[i] > 0.0)) mapping.push_back(i);
  }
  Permutation sigma(std::move(mapping));

  if (k == n) {
    return {1.0, pair, n, std::move(sigma)};
  }

  std::vector<double> p_front(k);
  std::vector<double> r_front(k);
  CompensatedSum mass;
  for (std::size_t i = 0; i < k; ++i) {
    p_front[i] = p[sigma[i]];
    r_front[i] = r[sigma[i]];
    mass.add(r_front[i]);
  }
  const double big_r = mass.value();
  AbsolutelyContinuousPair reduced(Distribution(std::move(p_front)),
                                   Distribution::normalized(std::move(r_front)));
  return {big_r, std::move(reduced), k, std::move(sigma)};
}

}  // namespace infomeasure
