// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dlrrf/tensor.hpp"

namespace dlrrf {

Mat matmul(const Mat& a, const Mat& b);     // A * B
Mat matmul_tn(const Mat& a, const Mat& b);  // A^T * B
Mat matmul_nt(const Mat& a, const Mat& b);  // A * B^T
Mat transpose(const Mat& a);
Mat mat_add(const Mat& a, const Mat& b);
Mat mat_sub(const Mat& a, const Mat& b);
Mat mat_scale(const Mat& a, double s);

/// Full spectral decomposition of a symmetric matrix. Eigenvalues
/// ascending; eigenvectors are the matching columns of an orthogonal
/// matrix.
struct SymEig {
  std::vector<double> eigenvalues;
  Mat eigenvectors;
};

/// Cyclic Jacobi iteration (off-diagonal tolerance 1e-12 relative, at
/// most 100 sweeps). Deterministic for identical input bits. Throws on
/// non-square or non-symmetric input.
SymEig sym_eig(const Mat& g);

/// Solves A X = B for symmetric positive-definite A by Cholesky.
Mat cholesky_solve(const Mat& a, const Mat& b);

/// Top-k left singular vectors of Y, ordered by descending singular
/// value, computed through the Gram matrix Y Y^T. Column signs are fixed
/// by making each column's largest-magnitude entry positive.
Mat truncated_left_svd(const Mat& y, int k);

}  // namespace dlrrf
