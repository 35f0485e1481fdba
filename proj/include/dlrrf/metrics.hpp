// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "dlrrf/tensor.hpp"

namespace dlrrf {

inline constexpr double kPsnrCapDb = 300.0;

struct MetricReport {
  double psnr_db = 0.0;
  std::vector<double> psnr_per_band;
  double ssim = 0.0;
  double ergas = 0.0;
  double sam_deg = 0.0;
  double rmse = 0.0;
  double uiqi = 0.0;
};

/// Per-band PSNR (peak = per-band max of the reference), averaged over
/// bands; zero error maps to the 300 dB cap.
std::pair<double, std::vector<double>> psnr(const Tensor3& ref,
                                            const Tensor3& est);

/// Mean over bands of mean local SSIM, 8x8 sliding windows,
/// c1 = 0.01^2, c2 = 0.03^2, both inputs rescaled to [0,1] by the
/// reference dynamic range.
double ssim(const Tensor3& ref, const Tensor3& est);

/// sf-free global relative error; the spatial-size ratio prefactor is
/// (W*H)/(w*h) = sf^2.
double ergas(const Tensor3& ref, const Tensor3& est, int sf);

/// Mean spectral angle over pixels, in degrees.
double sam(const Tensor3& ref, const Tensor3& est);

double rmse(const Tensor3& ref, const Tensor3& est);

/// Per band on 32x32 blocks, then averaged.
double uiqi(const Tensor3& ref, const Tensor3& est);

MetricReport evaluate(const Tensor3& ref, const Tensor3& est, int sf);

void write_metrics_csv(const std::string& path, const MetricReport& r);
void write_per_band_psnr_csv(const std::string& path, const MetricReport& r);

}  // namespace dlrrf
