// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/subspace.hpp"

#include <cmath>

#include "dlrrf/linalg.hpp"
#include "dlrrf/tensor_ops.hpp"

namespace dlrrf {

SubspacePair estimate_dictionaries(const Tensor3& y, int s1, int s2) {
  const int S = y.d3;
  if (s1 < 1 || s2 < 0 || s1 + s2 > S)
    throw std::invalid_argument("estimate_dictionaries: need s1 + s2 <= S");
  if (frob_norm(y) == 0.0)
    throw std::invalid_argument("estimate_dictionaries: zero input");

  const Mat yu = unfold(y, 3);
  const int k = s1 + s2;

  // rank check on the Gram spectrum
  {
    const SymEig eig = sym_eig(matmul_nt(yu, yu));
    const double lmax = eig.eigenvalues.back();
    const double lk = eig.eigenvalues[S - k];
    if (lk <= 1e-12 * lmax)
      throw std::runtime_error(
          "estimate_dictionaries: input rank below s1 + s2");
  }

  const Mat u = truncated_left_svd(yu, k);
  SubspacePair out;
  out.s1 = s1;
  out.s2 = s2;
  out.d_l = Mat(S, s1);
  for (int j = 0; j < s1; ++j)
    for (int i = 0; i < S; ++i) out.d_l(i, j) = u(i, j);
  if (s2 > 0) {
    out.d_e = Mat(S, s2);
    for (int j = 0; j < s2; ++j)
      for (int i = 0; i < S; ++i) out.d_e(i, j) = u(i, s1 + j);
  }
  return out;
}

}  // namespace dlrrf
