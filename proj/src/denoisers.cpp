// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/denoisers.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dlrrf {
namespace {

int reflect_index(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

void gaussian_blur_band(const double* in, double* out, int w, int h,
                        double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> kernel(2 * radius + 1);
  double ksum = 0.0;
  for (int r = -radius; r <= radius; ++r) {
    kernel[r + radius] = std::exp(-0.5 * (r / sigma) * (r / sigma));
    ksum += kernel[r + radius];
  }
  for (double& v : kernel) v /= ksum;

  std::vector<double> tmp(static_cast<std::size_t>(w) * h);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      double acc = 0.0;
      for (int r = -radius; r <= radius; ++r)
        acc += kernel[r + radius] * in[reflect_index(i + r, w) + w * j];
      tmp[i + static_cast<std::size_t>(w) * j] = acc;
    }
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      double acc = 0.0;
      for (int r = -radius; r <= radius; ++r)
        acc += kernel[r + radius] *
               tmp[i + static_cast<std::size_t>(w) * reflect_index(j + r, h)];
      out[i + static_cast<std::size_t>(w) * j] = acc;
    }
}

constexpr double kInvSqrt2 = 0.70710678118654752440;

// One Haar analysis pass along a length-n signal (edge-replicated to
// even length). Writes ceil(n/2) approx then ceil(n/2) detail coeffs.
void haar_fwd_1d(const double* x, int n, double* out) {
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    const double a = x[2 * i];
    const double b = (2 * i + 1 < n) ? x[2 * i + 1] : x[n - 1];
    out[i] = (a + b) * kInvSqrt2;
    out[half + i] = (a - b) * kInvSqrt2;
  }
}

void haar_inv_1d(const double* coef, int n, double* x) {
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    const double a = (coef[i] + coef[half + i]) * kInvSqrt2;
    const double b = (coef[i] - coef[half + i]) * kInvSqrt2;
    x[2 * i] = a;
    if (2 * i + 1 < n) x[2 * i + 1] = b;
  }
}

// In-place 2-D Haar analysis of the top-left ww x hh block of a w x h
// band buffer; returns the (approx) sub-block dims.
std::pair<int, int> haar_fwd_2d(std::vector<double>& band, int w, int ww,
                                int hh) {
  std::vector<double> line(std::max(ww, hh) + 1), coef(std::max(ww, hh) + 1);
  for (int j = 0; j < hh; ++j) {
    for (int i = 0; i < ww; ++i) line[i] = band[i + static_cast<std::size_t>(w) * j];
    haar_fwd_1d(line.data(), ww, coef.data());
    for (int i = 0; i < ww; ++i) band[i + static_cast<std::size_t>(w) * j] = coef[i];
  }
  for (int i = 0; i < ww; ++i) {
    for (int j = 0; j < hh; ++j) line[j] = band[i + static_cast<std::size_t>(w) * j];
    haar_fwd_1d(line.data(), hh, coef.data());
    for (int j = 0; j < hh; ++j) band[i + static_cast<std::size_t>(w) * j] = coef[j];
  }
  return {(ww + 1) / 2, (hh + 1) / 2};
}

void haar_inv_2d(std::vector<double>& band, int w, int ww, int hh) {
  std::vector<double> line(std::max(ww, hh) + 1), coef(std::max(ww, hh) + 1);
  for (int i = 0; i < ww; ++i) {
    for (int j = 0; j < hh; ++j) coef[j] = band[i + static_cast<std::size_t>(w) * j];
    coef[hh] = 0.0;  // dropped last detail of an odd-length pass is zero
    haar_inv_1d(coef.data(), hh, line.data());
    for (int j = 0; j < hh; ++j) band[i + static_cast<std::size_t>(w) * j] = line[j];
  }
  for (int j = 0; j < hh; ++j) {
    for (int i = 0; i < ww; ++i) coef[i] = band[i + static_cast<std::size_t>(w) * j];
    coef[ww] = 0.0;
    haar_inv_1d(coef.data(), ww, line.data());
    for (int i = 0; i < ww; ++i) band[i + static_cast<std::size_t>(w) * j] = line[i];
  }
}

void haar_soft_band(double* data, int w, int h, int levels, double thresh) {
  std::vector<double> band(data, data + static_cast<std::size_t>(w) * h);
  std::vector<std::pair<int, int>> sizes;  // block dims per level
  int ww = w, hh = h;
  for (int l = 0; l < levels && ww > 1 && hh > 1; ++l) {
    sizes.emplace_back(ww, hh);
    auto [aw, ah] = haar_fwd_2d(band, w, ww, hh);
    ww = aw;
    hh = ah;
  }
  // soft-threshold everything outside the final approximation block
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      if (i < ww && j < hh) continue;
      double& v = band[i + static_cast<std::size_t>(w) * j];
      v = std::copysign(std::max(std::abs(v) - thresh, 0.0), v);
    }
  for (auto it = sizes.rbegin(); it != sizes.rend(); ++it)
    haar_inv_2d(band, w, it->first, it->second);
  std::copy(band.begin(), band.end(), data);
}

}  // namespace

Tensor3 denoise(const Tensor3& t, const DenoiserKind& kind, double strength) {
  if (strength < 0.0) throw std::invalid_argument("denoise: negative strength");
  if (strength == 0.0 || kind.kind == DenoiserKind::Kind::identity) return t;

  Tensor3 out = t;
  const std::size_t plane = static_cast<std::size_t>(t.d1) * t.d2;
  switch (kind.kind) {
    case DenoiserKind::Kind::gaussian: {
      const double sigma = 10.0 * strength;
      for (int k = 0; k < t.d3; ++k)
        gaussian_blur_band(&t.data[plane * k], &out.data[plane * k], t.d1,
                           t.d2, sigma);
      break;
    }
    case DenoiserKind::Kind::haar_soft: {
      for (int k = 0; k < t.d3; ++k)
        haar_soft_band(&out.data[plane * k], t.d1, t.d2, kind.levels,
                       strength);
      break;
    }
    case DenoiserKind::Kind::identity:
      break;
  }
  return out;
}

DenoiserKind parse_denoiser_kind(const std::string& name) {
  DenoiserKind k;
  if (name == "identity")
    k.kind = DenoiserKind::Kind::identity;
  else if (name == "gaussian")
    k.kind = DenoiserKind::Kind::gaussian;
  else if (name == "haar_soft")
    k.kind = DenoiserKind::Kind::haar_soft;
  else
    throw std::invalid_argument("unknown denoiser kind: " + name);
  return k;
}

std::string denoiser_kind_name(const DenoiserKind& kind) {
  switch (kind.kind) {
    case DenoiserKind::Kind::identity: return "identity";
    case DenoiserKind::Kind::gaussian: return "gaussian";
    case DenoiserKind::Kind::haar_soft: return "haar_soft";
  }
  return "identity";
}

}  // namespace dlrrf
