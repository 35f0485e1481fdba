// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dlrrf/tensor.hpp"

namespace dlrrf {

/// Orthonormal spectral dictionaries for the low-rank and residual
/// components. Columns of [d_l | d_e] are mutually orthonormal. s2 == 0
/// disables the residual component (d_e has zero columns conceptually;
/// represented by cols == 0 via empty flag).
struct SubspacePair {
  Mat d_l;  // S x S1
  Mat d_e;  // S x S2 (unused when s2 == 0)
  int s1 = 0;
  int s2 = 0;
};

/// Truncated-SVD dictionary estimation from the mode-3 unfolding of the
/// observed HSI. Throws if the unfolding's numerical rank is below
/// s1 + s2.
SubspacePair estimate_dictionaries(const Tensor3& y, int s1, int s2);

}  // namespace dlrrf
