// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/simd/kernels.hpp"

#include <atomic>

#include "kernels_impl.hpp"

namespace dlrrf::simd {
namespace {

using detail::KernelTable;

Backend detect() {
#if defined(DLRRF_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Backend::avx2;
#endif
  return Backend::scalar;
}

std::atomic<Backend> g_backend{detect()};

const KernelTable& table() {
#if defined(DLRRF_HAVE_AVX2)
  if (g_backend.load(std::memory_order_relaxed) == Backend::avx2)
    return detail::avx2_table();
#endif
  return detail::scalar_table();
}

}  // namespace

bool avx2_available() { return detect() == Backend::avx2; }

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available()) b = Backend::scalar;
  g_backend.store(b, std::memory_order_relaxed);
}

double dot(const double* a, const double* b, std::size_t n) {
  return table().dot(a, b, n);
}
double sumsq(const double* a, std::size_t n) { return table().sumsq(a, n); }
double sumsq_diff(const double* a, const double* b, std::size_t n) {
  return table().sumsq_diff(a, b, n);
}
double sum(const double* a, std::size_t n) { return table().sum(a, n); }
void axpy(double* y, double a, const double* x, std::size_t n) {
  table().axpy(y, a, x, n);
}
void scale(double* y, double a, std::size_t n) { table().scale(y, a, n); }
void add_scaled(double* out, const double* a, double s, const double* b,
                std::size_t n) {
  table().add_scaled(out, a, s, b, n);
}

}  // namespace dlrrf::simd
