// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dlrrf/linalg.hpp"
#include "dlrrf/tensor.hpp"

namespace dlrrf {

/// Mode-n unfolding. Column ordering: the remaining indices vary with the
/// lower-numbered mode fastest (mode 1: col = j + d2*k; mode 2:
/// col = i + d1*k; mode 3: col = i + d1*j).
Mat unfold(const Tensor3& t, int mode);

/// Inverse of unfold; dims are the dims of the folded tensor.
Tensor3 fold(const Mat& m, int mode, int d1, int d2, int d3);

/// t x_n m; satisfies unfold(result, n) == m * unfold(t, n).
Tensor3 mode_n_product(const Tensor3& t, const Mat& m, int mode);

Tensor3 tensor_add(const Tensor3& a, const Tensor3& b);
Tensor3 tensor_sub(const Tensor3& a, const Tensor3& b);
Tensor3 tensor_scale(const Tensor3& a, double s);
// a + s*b
Tensor3 tensor_add_scaled(const Tensor3& a, double s, const Tensor3& b);

/// Precomputed eigenstructure for the separable ridge problem
///   min_L || L x1 B1 x2 B2 x3 D - Y ||_F^2 + xi || L - M ||_F^2,
/// reusable across solves with the same operators.
class SeparableRidge {
 public:
  SeparableRidge(const Mat& b1, const Mat& b2, const Mat& d);

  /// xi > 0 required. Y has dims (b1.rows, b2.rows, d.rows); M has dims
  /// (b1.cols, b2.cols, d.cols).
  Tensor3 solve(const Tensor3& y, double xi, const Tensor3& m) const;

  /// Variant with an extra structured term tau * || L x3 F - Z ||_F^2
  /// where F acts on mode 3 only (spatial modes at full resolution).
  /// Requires the mode-3 operator D of the main term to have orthonormal
  /// columns. Used for exact block minimization in the quadratic
  /// regularizer mode.
  Tensor3 solve_with_spectral_term(const Tensor3& y, double tau, const Mat& f,
                                   const Tensor3& z, double xi,
                                   const Tensor3& m) const;

 private:
  Mat b1_, b2_, d_;
  SymEig e1_, e2_, e3_;
  std::vector<double> lam1_, lam2_, lam3_;  // clamped eigenvalues
};

/// One-shot form of SeparableRidge::solve.
Tensor3 separable_ridge_solve(const Mat& b1, const Mat& b2, const Mat& d,
                              const Tensor3& y, double xi, const Tensor3& m);

}  // namespace dlrrf
