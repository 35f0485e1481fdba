// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "dlrrf/simd/kernels.hpp"

namespace dlrrf {
namespace {

void check_dims(const Tensor3& ref, const Tensor3& est) {
  if (!ref.same_dims(est))
    throw std::invalid_argument("metrics: dimension mismatch");
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::pair<double, std::vector<double>> psnr(const Tensor3& ref,
                                            const Tensor3& est) {
  check_dims(ref, est);
  const std::size_t plane = static_cast<std::size_t>(ref.d1) * ref.d2;
  std::vector<double> per_band(ref.d3);
  double mean = 0.0;
  for (int k = 0; k < ref.d3; ++k) {
    const double* rb = &ref.data[plane * k];
    const double* eb = &est.data[plane * k];
    double peak = 0.0;
    for (std::size_t i = 0; i < plane; ++i) peak = std::max(peak, rb[i]);
    const double err = simd::sumsq_diff(rb, eb, plane);
    double v;
    if (err == 0.0) {
      v = kPsnrCapDb;
    } else {
      v = 10.0 * std::log10(static_cast<double>(plane) * peak * peak / err);
      v = std::min(v, kPsnrCapDb);
    }
    per_band[k] = v;
    mean += v;
  }
  return {mean / ref.d3, per_band};
}

double ssim(const Tensor3& ref, const Tensor3& est) {
  check_dims(ref, est);
  const int w = ref.d1, h = ref.d2;
  const std::size_t plane = static_cast<std::size_t>(w) * h;
  constexpr int win = 8;
  constexpr double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;

  // rescale both by the reference dynamic range
  double lo = ref.data[0], hi = ref.data[0];
  for (double v : ref.data) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi - lo;
  const double scale = range > 0.0 ? 1.0 / range : 1.0;

  double band_mean = 0.0;
  for (int k = 0; k < ref.d3; ++k) {
    const double* rb = &ref.data[plane * k];
    const double* eb = &est.data[plane * k];
    double acc = 0.0;
    std::size_t count = 0;
    const int wi = std::min(win, w), wj = std::min(win, h);
    for (int j0 = 0; j0 + wj <= h; ++j0)
      for (int i0 = 0; i0 + wi <= w; ++i0) {
        double mx = 0, my = 0;
        for (int j = 0; j < wj; ++j)
          for (int i = 0; i < wi; ++i) {
            mx += (rb[(i0 + i) + static_cast<std::size_t>(w) * (j0 + j)] - lo) * scale;
            my += (eb[(i0 + i) + static_cast<std::size_t>(w) * (j0 + j)] - lo) * scale;
          }
        const double n = static_cast<double>(wi) * wj;
        mx /= n;
        my /= n;
        double vx = 0, vy = 0, cxy = 0;
        for (int j = 0; j < wj; ++j)
          for (int i = 0; i < wi; ++i) {
            const double x =
                (rb[(i0 + i) + static_cast<std::size_t>(w) * (j0 + j)] - lo) * scale - mx;
            const double y =
                (eb[(i0 + i) + static_cast<std::size_t>(w) * (j0 + j)] - lo) * scale - my;
            vx += x * x;
            vy += y * y;
            cxy += x * y;
          }
        vx /= n;
        vy /= n;
        cxy /= n;
        acc += (2 * mx * my + c1) * (2 * cxy + c2) /
               ((mx * mx + my * my + c1) * (vx + vy + c2));
        ++count;
      }
    band_mean += count ? acc / count : 1.0;
  }
  return band_mean / ref.d3;
}

double ergas(const Tensor3& ref, const Tensor3& est, int sf) {
  check_dims(ref, est);
  if (sf < 1) throw std::invalid_argument("ergas: sf < 1");
  const std::size_t plane = static_cast<std::size_t>(ref.d1) * ref.d2;
  double acc = 0.0;
  for (int k = 0; k < ref.d3; ++k) {
    const double* rb = &ref.data[plane * k];
    const double* eb = &est.data[plane * k];
    const double err = simd::sumsq_diff(rb, eb, plane);
    const double mean = simd::sum(rb, plane) / static_cast<double>(plane);
    acc += err / (mean * mean);
  }
  const double ratio = static_cast<double>(sf) * sf;  // (W*H)/(w*h)
  return ratio * std::sqrt(1e4 / ref.d3 * acc);
}

double sam(const Tensor3& ref, const Tensor3& est) {
  check_dims(ref, est);
  double acc = 0.0;
  for (int j = 0; j < ref.d2; ++j)
    for (int i = 0; i < ref.d1; ++i) {
      double rr = 0, ee = 0, re = 0;
      for (int k = 0; k < ref.d3; ++k) {
        const double r = ref(i, j, k), e = est(i, j, k);
        rr += r * r;
        ee += e * e;
        re += r * e;
      }
      if (rr == 0.0 || ee == 0.0)
        throw std::invalid_argument("sam: zero-norm pixel spectrum");
      const double c = std::clamp(re / std::sqrt(rr * ee), -1.0, 1.0);
      acc += std::acos(c);
    }
  const double n = static_cast<double>(ref.d1) * ref.d2;
  return acc / n * (180.0 / std::numbers::pi);
}

double rmse(const Tensor3& ref, const Tensor3& est) {
  check_dims(ref, est);
  return std::sqrt(simd::sumsq_diff(ref.data.data(), est.data.data(),
                                    ref.size()) /
                   static_cast<double>(ref.size()));
}

double uiqi(const Tensor3& ref, const Tensor3& est) {
  check_dims(ref, est);
  constexpr int block = 32;
  const int w = ref.d1, h = ref.d2;
  double band_mean = 0.0;
  for (int k = 0; k < ref.d3; ++k) {
    double acc = 0.0;
    int count = 0;
    for (int j0 = 0; j0 < h; j0 += block)
      for (int i0 = 0; i0 < w; i0 += block) {
        const int bw = std::min(block, w - i0), bh = std::min(block, h - j0);
        const double n = static_cast<double>(bw) * bh;
        double mx = 0, my = 0;
        for (int j = 0; j < bh; ++j)
          for (int i = 0; i < bw; ++i) {
            mx += ref(i0 + i, j0 + j, k);
            my += est(i0 + i, j0 + j, k);
          }
        mx /= n;
        my /= n;
        double vx = 0, vy = 0, cxy = 0;
        for (int j = 0; j < bh; ++j)
          for (int i = 0; i < bw; ++i) {
            const double x = ref(i0 + i, j0 + j, k) - mx;
            const double y = est(i0 + i, j0 + j, k) - my;
            vx += x * x;
            vy += y * y;
            cxy += x * y;
          }
        vx /= n;
        vy /= n;
        cxy /= n;
        const double denom = (vx + vy) * (mx * mx + my * my);
        double q;
        if (denom == 0.0) {
          // constant blocks: identical means count as perfect agreement
          q = (vx == 0.0 && vy == 0.0 && mx == my) ? 1.0 : 0.0;
        } else {
          q = 4.0 * cxy * mx * my / denom;
        }
        acc += q;
        ++count;
      }
    band_mean += acc / count;
  }
  return band_mean / ref.d3;
}

MetricReport evaluate(const Tensor3& ref, const Tensor3& est, int sf) {
  MetricReport r;
  auto [p, pb] = psnr(ref, est);
  r.psnr_db = p;
  r.psnr_per_band = std::move(pb);
  r.ssim = ssim(ref, est);
  r.ergas = ergas(ref, est, sf);
  r.sam_deg = sam(ref, est);
  r.rmse = rmse(ref, est);
  r.uiqi = uiqi(ref, est);
  return r;
}

void write_metrics_csv(const std::string& path, const MetricReport& r) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write metrics file: " + path);
  f << "psnr_db,ssim,ergas,sam_deg,rmse,uiqi\n"
    << fmt17(r.psnr_db) << ',' << fmt17(r.ssim) << ',' << fmt17(r.ergas)
    << ',' << fmt17(r.sam_deg) << ',' << fmt17(r.rmse) << ','
    << fmt17(r.uiqi) << '\n';
}

void write_per_band_psnr_csv(const std::string& path, const MetricReport& r) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write per-band file: " + path);
  f << "band,psnr_db\n";
  for (std::size_t k = 0; k < r.psnr_per_band.size(); ++k)
    f << k << ',' << fmt17(r.psnr_per_band[k]) << '\n';
}

}  // namespace dlrrf
