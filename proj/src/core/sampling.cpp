#include "core/sampling.hpp"

#include <cmath>
#include <utility>

#include "core/numeric.hpp"

namespace infomeasure {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> sample_exponentials(std::size_t n, Rng& rng) {
  std::vector<double> e(n);
  for (double& x : e) x = -std::log(rng.uniform_open());
  return e;
}

// Chooses `count` distinct indices out of n (partial Fisher-Yates).
std::vector<std::size_t> choose_indices(std::size_t n, std::size_t count,
                                        Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t j = i + rng.index(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

}  // namespace

std::size_t Rng::index(std::size_t n) {
  // Lemire's multiply-shift; bias is negligible for the small n used here
  // and the result is platform-deterministic.
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(next()) * n) >> 64);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t trial) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ splitmix64(stream));
  s = splitmix64(s ^ splitmix64(trial));
  return s;
}

Distribution sample_distribution(std::size_t n, Rng& rng) {
  if (n == 0) {
    throw Error(ErrorCode::invalid_argument, "cannot sample an empty simplex");
  }
  return Distribution::normalized(sample_exponentials(n, rng));
}

Distribution sample_distribution(std::size_t n, double zero_pattern_prob,
                                 Rng& rng) {
  Distribution p = sample_distribution(n, rng);
  if (n < 2 || !(rng.uniform01() < zero_pattern_prob)) return p;
  const std::size_t zeros = 1 + rng.index(n - 1);  // proper subset, never all
  std::vector<double> w = p.weights();
  for (std::size_t i : choose_indices(n, zeros, rng)) w[i] = 0.0;
  return Distribution::normalized(std::move(w));
}

AbsolutelyContinuousPair sample_pair(std::size_t n, double zero_pattern_prob,
                                     Rng& rng) {
  Distribution p = sample_distribution(n, rng);
  Distribution r = sample_distribution(n, rng);
  if (n < 2 || !(rng.uniform01() < zero_pattern_prob)) return {p, r};

  const std::size_t zeros = 1 + rng.index(n - 1);
  std::vector<double> pw = p.weights();
  std::vector<double> rw = r.weights();
  for (std::size_t i : choose_indices(n, zeros, rng)) {
    pw[i] = 0.0;
    // The support of r is a random superset of the support of p: each index
    // dropped from p keeps its r-mass on a coin flip.
    if (rng.uniform01() < 0.5) rw[i] = 0.0;
  }
  return {Distribution::normalized(std::move(pw)),
          Distribution::normalized(std::move(rw))};
}

Permutation sample_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> mapping = choose_indices(n, n, rng);
  return Permutation(std::move(mapping));
}

}  // namespace infomeasure
