#pragma once

#include <cstdint>
#include <random>

#include "core/compose.hpp"
#include "core/distribution.hpp"

namespace infomeasure {

/// Deterministic random source.  The engine is a standard mt19937_64 and the
/// uniform mappings below are written out by hand, so identical seeds give
/// identical streams on every platform (std::uniform_real_distribution and
/// friends are implementation-defined and would not).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1); never returns an exact endpoint.
  double uniform_open() {
    return static_cast<double>((next() >> 11) | 1u) * 0x1.0p-53;
  }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);

private:
  std::mt19937_64 engine_;
};

/// Stream/trial seed derivation (splitmix64-style mixing), so each audit
/// trial draws from an independent substream regardless of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t trial);

/// Approximately uniform point of the simplex: normalized independent
/// unit-rate exponentials.  Every entry is strictly positive.
Distribution sample_distribution(std::size_t n, Rng& rng);

/// As sample_distribution, but with probability `zero_pattern_prob` (and
/// n >= 2) a random proper subset of entries is zeroed out and the rest
/// renormalized, so consumers exercise boundary faces of the simplex.
Distribution sample_distribution(std::size_t n, double zero_pattern_prob,
                                 Rng& rng);

/// Samples an absolutely continuous pair: r has full support on a random
/// superset of the support of p.  With probability `zero_pattern_prob` a
/// random proper subset of p's entries (never all) is zeroed out.
AbsolutelyContinuousPair sample_pair(std::size_t n, double zero_pattern_prob,
                                     Rng& rng);

Permutation sample_permutation(std::size_t n, Rng& rng);

}  // namespace infomeasure
