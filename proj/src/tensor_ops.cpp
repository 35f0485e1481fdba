// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/tensor_ops.hpp"

#include <algorithm>
#include <cmath>

#include "dlrrf/simd/kernels.hpp"

namespace dlrrf {

Mat unfold(const Tensor3& t, int mode) {
  const int d1 = t.d1, d2 = t.d2, d3 = t.d3;
  switch (mode) {
    case 1: {
      Mat m(d1, d2 * d3);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) m(i, j + d2 * k) = t(i, j, k);
      return m;
    }
    case 2: {
      Mat m(d2, d1 * d3);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) m(j, i + d1 * k) = t(i, j, k);
      return m;
    }
    case 3: {
      Mat m(d3, d1 * d2);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) m(k, i + d1 * j) = t(i, j, k);
      return m;
    }
    default:
      throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
  }
}

Tensor3 fold(const Mat& m, int mode, int d1, int d2, int d3) {
  Tensor3 t(d1, d2, d3);
  const std::size_t expect = t.size();
  if (m.size() != expect) throw std::invalid_argument("fold: size mismatch");
  switch (mode) {
    case 1:
      if (m.rows != d1) throw std::invalid_argument("fold: row mismatch");
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) t(i, j, k) = m(i, j + d2 * k);
      break;
    case 2:
      if (m.rows != d2) throw std::invalid_argument("fold: row mismatch");
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) t(i, j, k) = m(j, i + d1 * k);
      break;
    case 3:
      if (m.rows != d3) throw std::invalid_argument("fold: row mismatch");
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j)
          for (int i = 0; i < d1; ++i) t(i, j, k) = m(k, i + d1 * j);
      break;
    default:
      throw std::invalid_argument("fold: mode must be 1, 2 or 3");
  }
  return t;
}

Tensor3 mode_n_product(const Tensor3& t, const Mat& m, int mode) {
  if (m.cols != t.dim(mode))
    throw std::invalid_argument("mode_n_product: dimension mismatch");
  const int d1 = t.d1, d2 = t.d2, d3 = t.d3, r = m.rows;
  switch (mode) {
    case 1: {
      Tensor3 out(r, d2, d3);
      for (int k = 0; k < d3; ++k)
        for (int j = 0; j < d2; ++j) {
          const double* tin = &t.data[static_cast<std::size_t>(d1) *
                                      (j + static_cast<std::size_t>(d2) * k)];
          double* o = &out.data[static_cast<std::size_t>(r) *
                                (j + static_cast<std::size_t>(d2) * k)];
          for (int i = 0; i < d1; ++i) simd::axpy(o, tin[i], m.col(i), r);
        }
      return out;
    }
    case 2: {
      Tensor3 out(d1, r, d3);
      for (int k = 0; k < d3; ++k)
        for (int rr = 0; rr < r; ++rr) {
          double* o = &out.data[static_cast<std::size_t>(d1) *
                                (rr + static_cast<std::size_t>(r) * k)];
          for (int j = 0; j < d2; ++j) {
            const double* tin =
                &t.data[static_cast<std::size_t>(d1) *
                        (j + static_cast<std::size_t>(d2) * k)];
            simd::axpy(o, m(rr, j), tin, d1);
          }
        }
      return out;
    }
    case 3: {
      Tensor3 out(d1, d2, r);
      const std::size_t plane = static_cast<std::size_t>(d1) * d2;
      for (int rr = 0; rr < r; ++rr) {
        double* o = &out.data[plane * rr];
        for (int k = 0; k < d3; ++k)
          simd::axpy(o, m(rr, k), &t.data[plane * k], plane);
      }
      return out;
    }
    default:
      throw std::invalid_argument("mode_n_product: mode must be 1, 2 or 3");
  }
}

Tensor3 tensor_add(const Tensor3& a, const Tensor3& b) {
  if (!a.same_dims(b)) throw std::invalid_argument("tensor_add: dims differ");
  Tensor3 c(a.d1, a.d2, a.d3);
  simd::add_scaled(c.data.data(), a.data.data(), 1.0, b.data.data(), a.size());
  return c;
}

Tensor3 tensor_sub(const Tensor3& a, const Tensor3& b) {
  if (!a.same_dims(b)) throw std::invalid_argument("tensor_sub: dims differ");
  Tensor3 c(a.d1, a.d2, a.d3);
  simd::add_scaled(c.data.data(), a.data.data(), -1.0, b.data.data(), a.size());
  return c;
}

Tensor3 tensor_scale(const Tensor3& a, double s) {
  Tensor3 c = a;
  simd::scale(c.data.data(), s, c.size());
  return c;
}

Tensor3 tensor_add_scaled(const Tensor3& a, double s, const Tensor3& b) {
  if (!a.same_dims(b))
    throw std::invalid_argument("tensor_add_scaled: dims differ");
  Tensor3 c(a.d1, a.d2, a.d3);
  simd::add_scaled(c.data.data(), a.data.data(), s, b.data.data(), a.size());
  return c;
}

namespace {

std::vector<double> clamp_small(const std::vector<double>& lam) {
  double lmax = 0.0;
  for (double v : lam) lmax = std::max(lmax, std::abs(v));
  std::vector<double> out(lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i)
    out[i] = std::abs(lam[i]) < 1e-12 * lmax ? 0.0 : lam[i];
  return out;
}

Tensor3 to_eigenbasis(const Tensor3& t, const Mat& q1, const Mat& q2,
                      const Mat& q3) {
  Tensor3 r = mode_n_product(t, transpose(q1), 1);
  r = mode_n_product(r, transpose(q2), 2);
  return mode_n_product(r, transpose(q3), 3);
}

Tensor3 from_eigenbasis(const Tensor3& t, const Mat& q1, const Mat& q2,
                        const Mat& q3) {
  Tensor3 r = mode_n_product(t, q1, 1);
  r = mode_n_product(r, q2, 2);
  return mode_n_product(r, q3, 3);
}

}  // namespace

SeparableRidge::SeparableRidge(const Mat& b1, const Mat& b2, const Mat& d)
    : b1_(b1), b2_(b2), d_(d) {
  e1_ = sym_eig(matmul_tn(b1, b1));
  e2_ = sym_eig(matmul_tn(b2, b2));
  e3_ = sym_eig(matmul_tn(d, d));
  lam1_ = clamp_small(e1_.eigenvalues);
  lam2_ = clamp_small(e2_.eigenvalues);
  lam3_ = clamp_small(e3_.eigenvalues);
}

Tensor3 SeparableRidge::solve(const Tensor3& y, double xi,
                              const Tensor3& m) const {
  if (xi <= 0.0) throw std::invalid_argument("separable_ridge_solve: xi <= 0");
  if (y.d1 != b1_.rows || y.d2 != b2_.rows || y.d3 != d_.rows ||
      m.d1 != b1_.cols || m.d2 != b2_.cols || m.d3 != d_.cols)
    throw std::invalid_argument("separable_ridge_solve: dimension mismatch");

  Tensor3 rhs = mode_n_product(y, transpose(b1_), 1);
  rhs = mode_n_product(rhs, transpose(b2_), 2);
  rhs = mode_n_product(rhs, transpose(d_), 3);
  rhs = tensor_add_scaled(rhs, xi, m);

  Tensor3 w = to_eigenbasis(rhs, e1_.eigenvectors, e2_.eigenvectors,
                            e3_.eigenvectors);
  for (int k = 0; k < w.d3; ++k)
    for (int j = 0; j < w.d2; ++j)
      for (int i = 0; i < w.d1; ++i)
        w(i, j, k) /= lam1_[i] * lam2_[j] * lam3_[k] + xi;
  return from_eigenbasis(w, e1_.eigenvectors, e2_.eigenvectors,
                         e3_.eigenvectors);
}

Tensor3 SeparableRidge::solve_with_spectral_term(const Tensor3& y, double tau,
                                                 const Mat& f,
                                                 const Tensor3& z, double xi,
                                                 const Tensor3& m) const {
  if (xi <= 0.0) throw std::invalid_argument("separable_ridge_solve: xi <= 0");
  if (f.cols != d_.cols || z.d1 != m.d1 || z.d2 != m.d2 || z.d3 != f.rows)
    throw std::invalid_argument("solve_with_spectral_term: dims mismatch");

  const SymEig e3 = sym_eig(matmul_tn(f, f));
  const std::vector<double> lam3 = clamp_small(e3.eigenvalues);

  Tensor3 rhs = mode_n_product(y, transpose(b1_), 1);
  rhs = mode_n_product(rhs, transpose(b2_), 2);
  rhs = mode_n_product(rhs, transpose(d_), 3);
  rhs = tensor_add(rhs, mode_n_product(z, mat_scale(transpose(f), tau), 3));
  rhs = tensor_add_scaled(rhs, xi, m);

  Tensor3 w = to_eigenbasis(rhs, e1_.eigenvectors, e2_.eigenvectors,
                            e3.eigenvectors);
  for (int k = 0; k < w.d3; ++k)
    for (int j = 0; j < w.d2; ++j)
      for (int i = 0; i < w.d1; ++i)
        w(i, j, k) /= lam1_[i] * lam2_[j] + tau * lam3[k] + xi;
  return from_eigenbasis(w, e1_.eigenvectors, e2_.eigenvectors,
                         e3.eigenvectors);
}

Tensor3 separable_ridge_solve(const Mat& b1, const Mat& b2, const Mat& d,
                              const Tensor3& y, double xi, const Tensor3& m) {
  return SeparableRidge(b1, b2, d).solve(y, xi, m);
}

}  // namespace dlrrf
