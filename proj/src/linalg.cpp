// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dlrrf/simd/kernels.hpp"

namespace dlrrf {

Mat matmul(const Mat& a, const Mat& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: dims mismatch");
  Mat c(a.rows, b.cols);
  for (int j = 0; j < b.cols; ++j) {
    double* cj = c.col(j);
    for (int l = 0; l < a.cols; ++l) {
      const double blj = b(l, j);
      if (blj != 0.0) simd::axpy(cj, blj, a.col(l), a.rows);
    }
  }
  return c;
}

Mat matmul_tn(const Mat& a, const Mat& b) {
  if (a.rows != b.rows) throw std::invalid_argument("matmul_tn: dims mismatch");
  Mat c(a.cols, b.cols);
  for (int j = 0; j < b.cols; ++j)
    for (int i = 0; i < a.cols; ++i)
      c(i, j) = simd::dot(a.col(i), b.col(j), a.rows);
  return c;
}

Mat matmul_nt(const Mat& a, const Mat& b) {
  if (a.cols != b.cols) throw std::invalid_argument("matmul_nt: dims mismatch");
  Mat c(a.rows, b.rows);
  for (int l = 0; l < a.cols; ++l) {
    const double* al = a.col(l);
    for (int j = 0; j < b.rows; ++j) {
      const double blj = b(j, l);
      if (blj != 0.0) simd::axpy(c.col(j), blj, al, a.rows);
    }
  }
  return c;
}

Mat transpose(const Mat& a) {
  Mat t(a.cols, a.rows);
  for (int j = 0; j < a.cols; ++j)
    for (int i = 0; i < a.rows; ++i) t(j, i) = a(i, j);
  return t;
}

Mat mat_add(const Mat& a, const Mat& b) {
  Mat c(a.rows, a.cols);
  simd::add_scaled(c.data.data(), a.data.data(), 1.0, b.data.data(), a.size());
  return c;
}

Mat mat_sub(const Mat& a, const Mat& b) {
  Mat c(a.rows, a.cols);
  simd::add_scaled(c.data.data(), a.data.data(), -1.0, b.data.data(), a.size());
  return c;
}

Mat mat_scale(const Mat& a, double s) {
  Mat c = a;
  simd::scale(c.data.data(), s, c.size());
  return c;
}

SymEig sym_eig(const Mat& g) {
  if (g.rows != g.cols) throw std::invalid_argument("sym_eig: matrix not square");
  const int n = g.rows;
  const double gnorm = frob_norm(g);
  {
    double asym = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < j; ++i) {
        const double d = g(i, j) - g(j, i);
        asym += d * d;
      }
    if (std::sqrt(2.0 * asym) > 1e-10 * std::max(gnorm, 1e-300))
      throw std::invalid_argument("sym_eig: matrix not symmetric");
  }

  Mat a = g;
  // symmetrize exactly so rotations see one consistent value
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  Mat v = Mat::identity(n);

  const double tol = 1e-12 * std::max(gnorm, 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < q; ++p) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= tol) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (int i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) < a(j, j); });

  SymEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

Mat cholesky_solve(const Mat& a, const Mat& b) {
  if (a.rows != a.cols || a.rows != b.rows)
    throw std::invalid_argument("cholesky_solve: dims mismatch");
  const int n = a.rows;
  Mat l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0)
      throw std::runtime_error("cholesky_solve: matrix not positive definite");
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  Mat x = b;
  for (int c = 0; c < b.cols; ++c) {
    double* xc = x.col(c);
    for (int i = 0; i < n; ++i) {
      double s = xc[i];
      for (int k = 0; k < i; ++k) s -= l(i, k) * xc[k];
      xc[i] = s / l(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
      double s = xc[i];
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * xc[k];
      xc[i] = s / l(i, i);
    }
  }
  return x;
}

Mat truncated_left_svd(const Mat& y, int k) {
  if (k < 1 || k > std::min(y.rows, y.cols))
    throw std::invalid_argument("truncated_left_svd: k out of range");
  const Mat gram = matmul_nt(y, y);
  const SymEig eig = sym_eig(gram);
  const int n = y.rows;
  Mat u(n, k);
  for (int j = 0; j < k; ++j) {
    const int src = n - 1 - j;  // descending eigenvalue order
    int imax = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(eig.eigenvectors(i, src)) >
          std::abs(eig.eigenvectors(imax, src)))
        imax = i;
    const double sign = eig.eigenvectors(imax, src) >= 0.0 ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) u(i, j) = sign * eig.eigenvectors(i, src);
  }
  return u;
}

}  // namespace dlrrf
