// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>

#include "dlrrf/linalg.hpp"
#include "dlrrf/tensor.hpp"
#include "dlrrf/tensor_ops.hpp"

namespace dlrrf::testutil {

inline Tensor3 random_tensor(int d1, int d2, int d3, std::mt19937_64& rng) {
  Tensor3 t(d1, d2, d3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : t.data) v = dist(rng);
  return t;
}

inline Mat random_mat(int rows, int cols, std::mt19937_64& rng) {
  Mat m(rows, cols);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : m.data) v = dist(rng);
  return m;
}

// Gram-Schmidt columns of a random matrix.
inline Mat random_orthonormal(int rows, int cols, std::mt19937_64& rng) {
  Mat m = random_mat(rows, cols, rng);
  for (int j = 0; j < cols; ++j) {
    for (int l = 0; l < j; ++l) {
      double dot = 0.0;
      for (int i = 0; i < rows; ++i) dot += m(i, j) * m(i, l);
      for (int i = 0; i < rows; ++i) m(i, j) -= dot * m(i, l);
    }
    double norm = 0.0;
    for (int i = 0; i < rows; ++i) norm += m(i, j) * m(i, j);
    norm = std::sqrt(norm);
    for (int i = 0; i < rows; ++i) m(i, j) /= norm;
  }
  return m;
}

// Explicit Kronecker product, used as the dense oracle.
inline Mat kron(const Mat& a, const Mat& b) {
  Mat k(a.rows * b.rows, a.cols * b.cols);
  for (int ja = 0; ja < a.cols; ++ja)
    for (int ia = 0; ia < a.rows; ++ia)
      for (int jb = 0; jb < b.cols; ++jb)
        for (int ib = 0; ib < b.rows; ++ib)
          k(ia * b.rows + ib, ja * b.cols + jb) = a(ia, ja) * b(ib, jb);
  return k;
}

// vec() in layout order (mode-1 fastest).
inline std::vector<double> vec(const Tensor3& t) { return t.data; }

// Dense Gaussian elimination with partial pivoting (test-only oracle).
inline std::vector<double> dense_solve(Mat a, std::vector<double> b) {
  const int n = a.rows;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(piv, col))) piv = i;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
      std::swap(b[col], b[piv]);
    }
    for (int i = col + 1; i < n; ++i) {
      const double f = a(i, col) / a(col, col);
      for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
    b[i] = s / a(i, i);
  }
  return b;
}

}  // namespace dlrrf::testutil
