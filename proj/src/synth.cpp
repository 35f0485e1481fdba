// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/synth.hpp"

#include <algorithm>
#include <cmath>

namespace dlrrf {
namespace {

// distinct deterministic sub-streams of one scene seed
constexpr std::uint64_t kStreamEndmember = 0xE17D0001ULL;
constexpr std::uint64_t kStreamAbundance = 0xE17D0002ULL;
constexpr std::uint64_t kStreamDr = 0xE17D0003ULL;
constexpr std::uint64_t kStreamRect = 0xE17D0004ULL;
constexpr std::uint64_t kStreamChanged = 0xE17D0005ULL;
constexpr std::uint64_t kStreamHsiNoise = 0xE17D0006ULL;
constexpr std::uint64_t kStreamMsiNoise = 0xE17D0007ULL;

int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// separable Gaussian smoothing of a W x H field
void smooth_field(std::vector<double>& f, int w, int h, double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int r = -radius; r <= radius; ++r) {
    kernel[r + radius] = std::exp(-0.5 * (r / sigma) * (r / sigma));
    ksum += kernel[r + radius];
  }
  for (double& v : kernel) v /= ksum;
  std::vector<double> tmp(f.size());
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      double acc = 0.0;
      for (int r = -radius; r <= radius; ++r)
        acc += kernel[r + radius] * f[reflect_index(i + r, w) + static_cast<std::size_t>(w) * j];
      tmp[i + static_cast<std::size_t>(w) * j] = acc;
    }
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      double acc = 0.0;
      for (int r = -radius; r <= radius; ++r)
        acc += kernel[r + radius] * tmp[i + static_cast<std::size_t>(w) * reflect_index(j + r, h)];
      f[i + static_cast<std::size_t>(w) * j] = acc;
    }
}

// scene synthesis with separate endmember and abundance seeds so a
// changed region can reuse the endmembers with a different mix
Tensor3 generate_scene_impl(const SceneSpec& spec, std::uint64_t abundance_seed) {
  const int W = spec.W, H = spec.H, S = spec.S, P = spec.n_endmembers;
  if (P < 1 || P > S)
    throw std::invalid_argument("generate_scene: need 1 <= n_endmembers <= S");

  // smooth positive endmember curves: cumulative sums of signed random
  // increments (random walks, mutually near-orthogonal in expectation),
  // box-smoothed, then shifted into (0, 1]
  std::vector<std::vector<double>> endmembers(P, std::vector<double>(S));
  for (int p = 0; p < P; ++p) {
    double acc = 0.0;
    std::vector<double> walk(S);
    for (int k = 0; k < S; ++k) {
      acc += counter_gaussian(spec.seed ^ kStreamEndmember,
                              static_cast<std::uint64_t>(p) * S + k);
      walk[k] = acc;
    }
    const int half = std::max(1, S / 16);
    double lo = 1e300, hi = -1e300;
    for (int k = 0; k < S; ++k) {
      double sum = 0.0;
      int n = 0;
      for (int r = -half; r <= half; ++r) {
        const int idx = reflect_index(k + r, S);
        sum += walk[idx];
        ++n;
      }
      endmembers[p][k] = sum / n;
      lo = std::min(lo, endmembers[p][k]);
      hi = std::max(hi, endmembers[p][k]);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    for (int k = 0; k < S; ++k)
      endmembers[p][k] = 0.05 + 0.95 * (endmembers[p][k] - lo) / span;
  }

  // softmax-normalized smoothed random abundance fields
  const std::size_t plane = static_cast<std::size_t>(W) * H;
  std::vector<std::vector<double>> fields(P, std::vector<double>(plane));
  for (int p = 0; p < P; ++p) {
    for (std::size_t i = 0; i < plane; ++i)
      fields[p][i] = counter_gaussian(abundance_seed ^ kStreamAbundance,
                                      static_cast<std::uint64_t>(p) * plane + i);
    smooth_field(fields[p], W, H, std::max(2.0, W / 8.0));
  }

  Tensor3 x(W, H, S);
  std::vector<double> weights(P);
  for (std::size_t px = 0; px < plane; ++px) {
    double wmax = -1e300;
    for (int p = 0; p < P; ++p) wmax = std::max(wmax, fields[p][px]);
    double wsum = 0.0;
    for (int p = 0; p < P; ++p) {
      // sharpened softmax gives spatial contrast between materials
      weights[p] = std::exp(15.0 * (fields[p][px] - wmax));
      wsum += weights[p];
    }
    for (int p = 0; p < P; ++p) {
      const double a = weights[p] / wsum;
      for (int k = 0; k < S; ++k)
        x.data[px + plane * k] += a * endmembers[p][k];
    }
  }
  return x;
}

}  // namespace

Tensor3 generate_scene(const SceneSpec& spec) {
  return generate_scene_impl(spec, spec.seed);
}

VariabilityPair make_variability_pair(const Tensor3& x, const SceneSpec& spec,
                                      const DegradationModel& model) {
  const int W = x.d1, H = x.d2, S = x.d3;
  const int s = model.r.rows;
  VariabilityPair out;

  // SRF drift: low-order polynomial ripples across bands, scaled to the
  // requested Frobenius magnitude, then clipped and row-renormalized
  if (spec.dr_magnitude > 0.0) {
    Mat dr(s, S);
    for (int i = 0; i < s; ++i) {
      double c1 = counter_gaussian(spec.seed ^ kStreamDr, 3 * i);
      double c2 = counter_gaussian(spec.seed ^ kStreamDr, 3 * i + 1);
      double c3 = counter_gaussian(spec.seed ^ kStreamDr, 3 * i + 2);
      for (int j = 0; j < S; ++j) {
        const double t = S > 1 ? 2.0 * j / (S - 1) - 1.0 : 0.0;
        dr(i, j) = c1 * t + c2 * (2 * t * t - 1) + c3 * (4 * t * t * t - 3 * t);
      }
    }
    const double cur = frob_norm(dr);
    if (cur > 0.0)
      for (double& v : dr.data) v /= cur;  // unit ripple direction

    // clipping and row renormalization shift the realized deviation, so
    // the ripple scale is tuned until ||srf - R||_F / ||R||_F lands near
    // the requested magnitude (deterministic fixed-point refinement)
    const double r_norm = frob_norm(model.r);
    const double target_rel = 0.8 * spec.dr_magnitude;
    double scale = spec.dr_magnitude * r_norm;
    Mat srf(s, S);
    for (int pass = 0; pass < 40; ++pass) {
      for (std::size_t i = 0; i < srf.data.size(); ++i)
        srf.data[i] = model.r.data[i] + scale * dr.data[i];
      for (int i = 0; i < s; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < S; ++j) {
          srf(i, j) = std::max(srf(i, j), 0.0);
          rowsum += srf(i, j);
        }
        if (rowsum <= 0.0)
          throw std::runtime_error("make_variability_pair: degenerate SRF row");
        for (int j = 0; j < S; ++j) srf(i, j) /= rowsum;
      }
      const double rel = frob_dist(srf, model.r) / r_norm;
      if (rel >= 0.65 * spec.dr_magnitude && rel <= 0.95 * spec.dr_magnitude)
        break;
      if (rel <= 0.0) {
        scale *= 2.0;
        continue;
      }
      scale *= target_rel / rel;
    }
    out.srf_true = srf;
  } else {
    out.srf_true = model.r;
  }

  // localized change: splice a rectangle from a scene built over the
  // same endmembers but an independently seeded abundance mix
  if (spec.change_fraction > 0.0) {
    const double cf = spec.change_fraction;
    int rw = std::clamp(static_cast<int>(std::lround(std::sqrt(cf) * W)), 1, W);
    int rh = std::clamp(
        static_cast<int>(std::lround(cf * W * H / static_cast<double>(rw))), 1,
        H);
    const double area = static_cast<double>(rw) * rh / (static_cast<double>(W) * H);
    if (area < 0.5 * cf || area > 2.0 * cf)
      throw std::runtime_error(
          "make_variability_pair: change rectangle degenerate");
    const int i0 = static_cast<int>(counter_uniform(spec.seed ^ kStreamRect, 0) *
                                    (W - rw + 1));
    const int j0 = static_cast<int>(counter_uniform(spec.seed ^ kStreamRect, 1) *
                                    (H - rh + 1));
    const Tensor3 x_alt =
        generate_scene_impl(spec, spec.seed ^ kStreamChanged);
    out.x_changed = x;
    for (int k = 0; k < S; ++k)
      for (int j = j0; j < j0 + rh; ++j)
        for (int i = i0; i < i0 + rw; ++i)
          out.x_changed(i, j, k) = x_alt(i, j, k);
  } else {
    out.x_changed = x;
  }

  out.y = observe_hsi(x, model,
                      {model.hsi_snr_db, spec.seed ^ kStreamHsiNoise});
  out.z = observe_msi(out.x_changed, out.srf_true,
                      {model.msi_snr_db, spec.seed ^ kStreamMsiNoise});
  return out;
}

}  // namespace dlrrf
