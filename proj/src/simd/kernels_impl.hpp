// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

// Internal dispatch table shared by the scalar and AVX2 translation units.
namespace dlrrf::simd::detail {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  double (*sumsq_diff)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  void (*axpy)(double*, double, const double*, std::size_t);
  void (*scale)(double*, double, std::size_t);
  void (*add_scaled)(double*, const double*, double, const double*,
                     std::size_t);
};

const KernelTable& scalar_table();
const KernelTable& avx2_table();  // valid only if avx2_available()

}  // namespace dlrrf::simd::detail
