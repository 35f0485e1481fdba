// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/tensor.hpp"

#include <cmath>

#include "dlrrf/simd/kernels.hpp"

namespace dlrrf {

double frob_norm(const Tensor3& t) {
  return std::sqrt(simd::sumsq(t.data.data(), t.size()));
}

double frob_norm(const Mat& m) {
  return std::sqrt(simd::sumsq(m.data.data(), m.size()));
}

double frob_dist(const Tensor3& a, const Tensor3& b) {
  if (!a.same_dims(b)) throw std::invalid_argument("frob_dist: dims differ");
  return std::sqrt(simd::sumsq_diff(a.data.data(), b.data.data(), a.size()));
}

double frob_dist(const Mat& a, const Mat& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("frob_dist: dims differ");
  return std::sqrt(simd::sumsq_diff(a.data.data(), b.data.data(), a.size()));
}

bool all_finite(const Tensor3& t) {
  for (double v : t.data)
    if (!std::isfinite(v)) return false;
  return true;
}

bool all_finite(const Mat& m) {
  for (double v : m.data)
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace dlrrf
