// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

#include "dlrrf/tensor.hpp"
#include "dlrrf/tensor_ops.hpp"

namespace dlrrf {

/// Observation operator bundle for one scenario. P1/P2 blur+downsample
/// the spatial modes, R is the nominal spectral response.
struct DegradationModel {
  Mat p1;  // w x W
  Mat p2;  // h x H
  Mat r;   // s x S
  double hsi_snr_db = 30.0;
  double msi_snr_db = 40.0;
  int sf = 4;
  double blur_sigma = 1.0;
};

struct NoiseSpec {
  double snr_db = std::numeric_limits<double>::infinity();  // inf: no noise
  std::uint64_t seed = 0;
};

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// (n_hi/sf) x n_hi operator: 1-D Gaussian convolution (kernel truncated
/// at radius ceil(3*sigma), renormalized, reflective boundary) followed
/// by keeping every sf-th sample starting at index 0. Rows sum to 1.
Mat blur_downsample_matrix(int n_hi, int sf, double sigma);

/// s x S row-stochastic response averaging contiguous band blocks of as
/// equal size as possible.
Mat band_average_srf(int S, int s);

/// t + n with iid Gaussian n scaled so the realized SNR matches
/// spec.snr_db exactly. Counter-based generator keyed by (seed, index):
/// the realization is independent of evaluation order.
Tensor3 add_noise_snr(const Tensor3& t, const NoiseSpec& spec);

/// Eq.-style HSI observation: spatial degradation then noise.
Tensor3 observe_hsi(const Tensor3& x, const DegradationModel& m,
                    const NoiseSpec& noise);

/// MSI observation: spectral degradation by the true SRF then noise.
Tensor3 observe_msi(const Tensor3& x, const Mat& srf_true,
                    const NoiseSpec& noise);

/// Standard normal deviate from a counter-based hash; deterministic and
/// order-independent. Exposed for the synth module.
double counter_gaussian(std::uint64_t seed, std::uint64_t index);
double counter_uniform(std::uint64_t seed, std::uint64_t index);  // (0,1]

}  // namespace dlrrf
