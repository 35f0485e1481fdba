// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

// Data-parallel primitives behind the tensor and metric inner loops.
// A scalar reference path always exists; an AVX2/FMA path is selected at
// runtime when the CPU supports it. Both paths use a fixed reduction
// order, so results are reproducible for a given backend.
namespace dlrrf::simd {

enum class Backend { scalar, avx2 };

bool avx2_available();
Backend active_backend();

// Overrides auto-detection (used by the equivalence tests). Requesting
// avx2 on a CPU without it falls back to scalar.
void set_backend(Backend b);

double dot(const double* a, const double* b, std::size_t n);
double sumsq(const double* a, std::size_t n);
double sumsq_diff(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);

// y += a * x
void axpy(double* y, double a, const double* x, std::size_t n);
// y *= a
void scale(double* y, double a, std::size_t n);
// out = a + s * b
void add_scaled(double* out, const double* a, double s, const double* b,
                std::size_t n);

}  // namespace dlrrf::simd
