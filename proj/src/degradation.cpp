// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/degradation.hpp"

#include <cmath>
#include <numbers>

namespace dlrrf {
namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int reflect_index(int i, int n) {
  // half-sample symmetric reflection: ... 1 0 | 0 1 ... n-1 | n-1 n-2 ...
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t h = mix64(mix64(seed) ^ index);
  return (static_cast<double>(h >> 11) + 1.0) * (1.0 / 9007199254740993.0);
}

double counter_gaussian(std::uint64_t seed, std::uint64_t index) {
  const double u1 = counter_uniform(seed, 2 * index);
  const double u2 = counter_uniform(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

Mat blur_downsample_matrix(int n_hi, int sf, double sigma) {
  if (n_hi <= 0 || sf <= 0 || sigma <= 0.0)
    throw std::invalid_argument("blur_downsample_matrix: invalid argument");
  if (n_hi % sf != 0)
    throw std::invalid_argument("blur_downsample_matrix: sf must divide n_hi");

  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int r = -radius; r <= radius; ++r) {
    kernel[r + radius] = std::exp(-0.5 * (r / sigma) * (r / sigma));
    ksum += kernel[r + radius];
  }
  for (double& v : kernel) v /= ksum;

  const int n_lo = n_hi / sf;
  Mat m(n_lo, n_hi);
  for (int out = 0; out < n_lo; ++out) {
    const int center = out * sf;  // downsampling phase anchored at 0
    for (int r = -radius; r <= radius; ++r)
      m(out, reflect_index(center + r, n_hi)) += kernel[r + radius];
  }
  return m;
}

Mat band_average_srf(int S, int s) {
  if (s > S || s <= 0)
    throw std::invalid_argument("band_average_srf: need 0 < s <= S");
  Mat m(s, S);
  for (int j = 0; j < s; ++j) {
    const int lo = static_cast<int>(static_cast<std::int64_t>(j) * S / s);
    const int hi = static_cast<int>(static_cast<std::int64_t>(j + 1) * S / s);
    for (int k = lo; k < hi; ++k) m(j, k) = 1.0 / (hi - lo);
  }
  return m;
}

Tensor3 add_noise_snr(const Tensor3& t, const NoiseSpec& spec) {
  if (std::isinf(spec.snr_db)) return t;
  const double signal = frob_norm(t);
  if (signal == 0.0)
    throw std::invalid_argument("add_noise_snr: zero-energy input");

  Tensor3 n(t.d1, t.d2, t.d3);
  for (std::size_t i = 0; i < n.size(); ++i)
    n.data[i] = counter_gaussian(spec.seed, i);
  const double nnorm = frob_norm(n);
  // scale the realized noise so the SNR is hit exactly
  const double target = signal * std::pow(10.0, -spec.snr_db / 20.0);
  return tensor_add_scaled(t, target / nnorm, n);
}

Tensor3 observe_hsi(const Tensor3& x, const DegradationModel& m,
                    const NoiseSpec& noise) {
  if (x.d1 != m.p1.cols || x.d2 != m.p2.cols)
    throw std::invalid_argument("observe_hsi: dimension mismatch");
  Tensor3 y = mode_n_product(mode_n_product(x, m.p1, 1), m.p2, 2);
  return add_noise_snr(y, noise);
}

Tensor3 observe_msi(const Tensor3& x, const Mat& srf_true,
                    const NoiseSpec& noise) {
  if (x.d3 != srf_true.cols)
    throw std::invalid_argument("observe_msi: dimension mismatch");
  return add_noise_snr(mode_n_product(x, srf_true, 3), noise);
}

}  // namespace dlrrf
