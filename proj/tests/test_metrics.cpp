// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "dlrrf/degradation.hpp"
#include "dlrrf/metrics.hpp"
#include "dlrrf/tensor_ops.hpp"
#include "metric_oracles.hpp"
#include "test_util.hpp"

using namespace dlrrf;
using namespace dlrrf::testutil;

namespace {

Tensor3 positive_random(int d1, int d2, int d3, std::mt19937_64& rng) {
  Tensor3 t = random_tensor(d1, d2, d3, rng);
  for (double& v : t.data) v = 0.55 + 0.45 * v;  // in (0.1, 1]
  return t;
}

}  // namespace

TEST_CASE("metrics: identities at est == ref") {
  std::mt19937_64 rng(301);
  const Tensor3 t = positive_random(16, 16, 5, rng);
  const auto [p, pb] = psnr(t, t);
  CHECK(p == doctest::Approx(kPsnrCapDb));
  REQUIRE(static_cast<int>(pb.size()) == 5);
  for (double v : pb) CHECK(v == kPsnrCapDb);
  CHECK(ssim(t, t) == doctest::Approx(1.0));
  CHECK(ergas(t, t, 4) == doctest::Approx(0.0));
  CHECK(sam(t, t) == doctest::Approx(0.0));
  CHECK(rmse(t, t) == doctest::Approx(0.0));
  CHECK(uiqi(t, t) == doctest::Approx(1.0));
}

TEST_CASE("metrics: sam is invariant to positive scaling") {
  std::mt19937_64 rng(307);
  const Tensor3 t = positive_random(8, 8, 6, rng);
  const Tensor3 scaled = tensor_scale(t, 2.0);
  CHECK(sam(t, scaled) <= 1e-6);
  const Tensor3 scaled2 = tensor_scale(t, 0.37);
  CHECK(sam(t, scaled2) <= 1e-6);
}

TEST_CASE("metrics: single-band closed form for psnr") {
  Tensor3 ref(4, 4, 1), est(4, 4, 1);
  for (double& v : ref.data) v = 1.0;
  for (double& v : est.data) v = 1.1;
  const auto [p, pb] = psnr(ref, est);
  CHECK(p == doctest::Approx(20.0).epsilon(1e-10));
}

TEST_CASE("metrics: each matches its independent oracle on random pairs") {
  std::mt19937_64 rng(311);
  for (int trial = 0; trial < 10; ++trial) {
    const Tensor3 ref = positive_random(8, 8, 5, rng);
    Tensor3 est = ref;
    std::uniform_real_distribution<double> noise(-0.05, 0.05);
    for (double& v : est.data) v += noise(rng);

    CHECK(psnr(ref, est).first ==
          doctest::Approx(psnr_oracle(ref, est)).epsilon(1e-10));
    CHECK(rmse(ref, est) ==
          doctest::Approx(rmse_oracle(ref, est)).epsilon(1e-10));
    CHECK(sam(ref, est) ==
          doctest::Approx(sam_oracle(ref, est)).epsilon(1e-10));
    CHECK(ergas(ref, est, 2) ==
          doctest::Approx(ergas_oracle(ref, est, 2)).epsilon(1e-10));
    CHECK(uiqi(ref, est) ==
          doctest::Approx(uiqi_oracle(ref, est)).epsilon(1e-10));
    CHECK(ssim(ref, est) ==
          doctest::Approx(ssim_oracle(ref, est)).epsilon(1e-10));
  }
}

TEST_CASE("metrics: ssim penalizes anticorrelated structure") {
  Tensor3 ref(16, 16, 1), est(16, 16, 1);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i) {
      const double v = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      ref(i, j, 0) = v;
      est(i, j, 0) = -v;
    }
  CHECK(ssim(ref, est) < 0.5);
}

TEST_CASE("metrics: rmse identity with total squared error") {
  std::mt19937_64 rng(313);
  const Tensor3 ref = positive_random(7, 9, 4, rng);
  const Tensor3 est = positive_random(7, 9, 4, rng);
  const double r = rmse(ref, est);
  const double total =
      frob_dist(ref, est) * frob_dist(ref, est);
  CHECK(r * r * static_cast<double>(ref.size()) ==
        doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("metrics: more noise strictly worsens psnr, rmse, ergas") {
  std::mt19937_64 rng(317);
  const Tensor3 ref = positive_random(16, 16, 5, rng);
  const Tensor3 low = add_noise_snr(ref, {40.0, 3});
  const Tensor3 high = add_noise_snr(ref, {20.0, 3});
  CHECK(psnr(ref, high).first < psnr(ref, low).first);
  CHECK(rmse(ref, high) > rmse(ref, low));
  CHECK(ergas(ref, high, 4) > ergas(ref, low, 4));
}

TEST_CASE("metrics: sam rejects zero spectra, dims must agree") {
  Tensor3 ref(2, 2, 3), est(2, 2, 3);
  for (double& v : est.data) v = 1.0;
  CHECK_THROWS_AS(sam(ref, est), std::invalid_argument);
  Tensor3 other(2, 2, 4);
  CHECK_THROWS_AS(rmse(ref, other), std::invalid_argument);
}

TEST_CASE("metrics: csv emission uses 17 significant digits") {
  MetricReport r;
  r.psnr_db = 1.0 / 3.0;
  r.ssim = 0.5;
  r.ergas = 0.1;
  r.sam_deg = 0.2;
  r.rmse = 0.3;
  r.uiqi = 0.4;
  r.psnr_per_band = {1.0 / 3.0, 2.0};
  const std::string path = "test_metrics_csv.txt";
  write_metrics_csv(path, r);
  std::ifstream f(path);
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  CHECK(header == "psnr_db,ssim,ergas,sam_deg,rmse,uiqi");
  CHECK(row.substr(0, 20) == "0.33333333333333331,");
  std::remove(path.c_str());

  write_per_band_psnr_csv(path, r);
  std::ifstream g(path);
  std::getline(g, header);
  CHECK(header == "band,psnr_db");
  std::getline(g, row);
  CHECK(row == "0,0.33333333333333331");
  std::remove(path.c_str());
}
