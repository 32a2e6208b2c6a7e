#pragma once

#include <cstddef>
#include <vector>

#include "core/distribution.hpp"

namespace infomeasure {

/// A bijection of {0, ..., n-1} stored as an index array; applying it to a
/// distribution puts p[sigma(i)] at position i.
class Permutation {
public:
  explicit Permutation(std::vector<std::size_t> mapping);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return mapping_.size(); }
  std::size_t operator[](std::size_t i) const { return mapping_[i]; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }

private:
  std::vector<std::size_t> mapping_;
};

/// w o (p^1, ..., p^n): the concatenation of the blocks w_i * p^i.  Defined
/// for w over n and one part per index; the result lives on k_1 + ... + k_n
/// elements and is again a distribution.
Distribution compose(const Distribution& w,
                     const std::vector<Distribution>& parts);

/// w (x) p = w o (p, ..., p), the two-stage product distribution.
Distribution tensor(const Distribution& w, const Distribution& p);

/// w*p (+) (1-w)*r: the length-2 composition (w, 1-w) o (p, r).
Distribution direct_sum(double w, const Distribution& p,
                        const Distribution& r);

Distribution permute(const Distribution& p, const Permutation& sigma);

/// Permutes both coordinates; absolute continuity is preserved.
AbsolutelyContinuousPair permute(const AbsolutelyContinuousPair& pair,
                                 const Permutation& sigma);

/// Applies compose to both coordinates of an absolutely continuous pair;
/// the composite pair is again absolutely continuous.
AbsolutelyContinuousPair pair_compose(
    const AbsolutelyContinuousPair& w,
    const std::vector<AbsolutelyContinuousPair>& parts);

/// Result of splitting a pair at the support of p: `big_r` is the r-mass
/// sitting over the support block, `reduced` the renormalized pair on that
/// block, and `front_permutation` the stable rearrangement that was applied
/// to move the support of p to the front.
struct ZeroBlockDecomposition {
  double big_r;
  AbsolutelyContinuousPair reduced;
  std::size_t k;
  Permutation front_permutation;
};

/// Splits (p, r) into the r-mass R over the support of p and the reduced
/// pair (p', r'/R).  R > 0 is guaranteed by absolute continuity.  When p has
/// full support this returns R = 1 and the input pair unchanged.
ZeroBlockDecomposition decompose_zeros(const AbsolutelyContinuousPair& pair);

}  // namespace infomeasure
