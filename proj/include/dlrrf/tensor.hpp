// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dlrrf {

/// Dense third-order tensor. Linear layout: mode-1 index fastest, then
/// mode-2, then mode-3, i.e. entry (i,j,k) lives at i + d1*(j + d2*k).
struct Tensor3 {
  int d1 = 0, d2 = 0, d3 = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(int n1, int n2, int n3)
      : d1(n1), d2(n2), d3(n3),
        data(static_cast<std::size_t>(n1) * n2 * n3, 0.0) {
    if (n1 <= 0 || n2 <= 0 || n3 <= 0)
      throw std::invalid_argument("Tensor3: dimensions must be positive");
  }

  std::size_t size() const { return data.size(); }

  double& operator()(int i, int j, int k) {
    return data[static_cast<std::size_t>(i) +
                static_cast<std::size_t>(d1) * (j + static_cast<std::size_t>(d2) * k)];
  }
  double operator()(int i, int j, int k) const {
    return data[static_cast<std::size_t>(i) +
                static_cast<std::size_t>(d1) * (j + static_cast<std::size_t>(d2) * k)];
  }

  int dim(int mode) const {
    switch (mode) {
      case 1: return d1;
      case 2: return d2;
      case 3: return d3;
      default: throw std::invalid_argument("Tensor3: mode must be 1, 2 or 3");
    }
  }

  bool same_dims(const Tensor3& o) const {
    return d1 == o.d1 && d2 == o.d2 && d3 == o.d3;
  }
};

/// Dense matrix, column-major (row index fastest).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(int r, int c)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {
    if (r <= 0 || c <= 0)
      throw std::invalid_argument("Mat: dimensions must be positive");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  double& operator()(int i, int j) {
    return data[static_cast<std::size_t>(i) +
                static_cast<std::size_t>(rows) * j];
  }
  double operator()(int i, int j) const {
    return data[static_cast<std::size_t>(i) +
                static_cast<std::size_t>(rows) * j];
  }

  double* col(int j) { return data.data() + static_cast<std::size_t>(rows) * j; }
  const double* col(int j) const {
    return data.data() + static_cast<std::size_t>(rows) * j;
  }

  std::size_t size() const { return data.size(); }
};

double frob_norm(const Tensor3& t);
double frob_norm(const Mat& m);
double frob_dist(const Tensor3& a, const Tensor3& b);
double frob_dist(const Mat& a, const Mat& b);
bool all_finite(const Tensor3& t);
bool all_finite(const Mat& m);

}  // namespace dlrrf
