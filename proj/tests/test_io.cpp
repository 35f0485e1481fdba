// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "dlrrf/io.hpp"
#include "dlrrf/tensor_ops.hpp"
#include "test_util.hpp"

using namespace dlrrf;
using namespace dlrrf::testutil;

namespace {

std::vector<char> slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  return std::vector<char>(std::istreambuf_iterator<char>(f),
                           std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::vector<char>& bytes) {
  std::ofstream f(path, std::ios::binary);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("tensor file: bitwise round trip over many random tensors") {
  std::mt19937_64 rng(401);
  TempFile tmp("test_io_roundtrip.t3");
  for (int trial = 0; trial < 50; ++trial) {
    const int d1 = 1 + static_cast<int>(rng() % 7);
    const int d2 = 1 + static_cast<int>(rng() % 6);
    const int d3 = 1 + static_cast<int>(rng() % 5);
    const Tensor3 t = random_tensor(d1, d2, d3, rng);
    write_tensor(tmp.path, t);
    const Tensor3 back = read_tensor(tmp.path);
    REQUIRE(back.d1 == d1);
    REQUIRE(back.d2 == d2);
    REQUIRE(back.d3 == d3);
    CHECK(back.data == t.data);
  }
}

TEST_CASE("tensor file: header layout is exactly as documented") {
  std::mt19937_64 rng(403);
  const Tensor3 t = random_tensor(7, 5, 3, rng);
  TempFile tmp("test_io_header.t3");
  write_tensor(tmp.path, t);
  const std::vector<char> bytes = slurp(tmp.path);
  REQUIRE(bytes.size() == 8 + 4 * 4 + 7 * 5 * 3 * 8);
  CHECK(std::string(bytes.data(), 7) == "DLRRFT3");
  CHECK(bytes[7] == '\0');
  // version 1 LE, then dims
  CHECK(static_cast<unsigned char>(bytes[8]) == 1);
  CHECK(static_cast<unsigned char>(bytes[12]) == 7);
  CHECK(static_cast<unsigned char>(bytes[16]) == 5);
  CHECK(static_cast<unsigned char>(bytes[20]) == 3);
}

TEST_CASE("tensor file: truncation, trailing bytes, bad magic, bad version") {
  std::mt19937_64 rng(407);
  const Tensor3 t = random_tensor(4, 3, 2, rng);
  TempFile tmp("test_io_bad.t3");
  write_tensor(tmp.path, t);
  const std::vector<char> good = slurp(tmp.path);

  std::vector<char> truncated(good.begin(), good.end() - 5);
  spit(tmp.path, truncated);
  CHECK_THROWS_AS(read_tensor(tmp.path), std::runtime_error);

  std::vector<char> padded = good;
  padded.push_back('x');
  spit(tmp.path, padded);
  CHECK_THROWS_AS(read_tensor(tmp.path), std::runtime_error);

  std::vector<char> magic = good;
  magic[0] = 'X';
  spit(tmp.path, magic);
  CHECK_THROWS_AS(read_tensor(tmp.path), std::runtime_error);

  std::vector<char> version = good;
  version[8] = 2;
  spit(tmp.path, version);
  CHECK_THROWS_AS(read_tensor(tmp.path), std::runtime_error);

  CHECK_THROWS_AS(read_tensor("test_io_does_not_exist.t3"),
                  std::runtime_error);
}

TEST_CASE("matrix file: round trip and d3 guard") {
  std::mt19937_64 rng(409);
  const Mat m = random_mat(6, 4, rng);
  TempFile tmp("test_io_mat.t3");
  write_matrix(tmp.path, m);
  const Mat back = read_matrix(tmp.path);
  REQUIRE(back.rows == 6);
  REQUIRE(back.cols == 4);
  CHECK(back.data == m.data);

  const Tensor3 t = random_tensor(3, 3, 2, rng);
  write_tensor(tmp.path, t);
  CHECK_THROWS_AS(read_matrix(tmp.path), std::runtime_error);
}

TEST_CASE("render_composite: constant tensor renders mid-gray") {
  Tensor3 t(3, 2, 1);
  for (double& v : t.data) v = 4.2;
  TempFile tmp("test_io_gray.ppm");
  render_composite(t, {0, 0, 0}, tmp.path);
  const std::vector<char> bytes = slurp(tmp.path);
  const std::string header = "P6\n3 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 3 * 2 * 3);
  CHECK(std::string(bytes.data(), header.size()) == header);
  for (std::size_t i = header.size(); i < bytes.size(); ++i)
    CHECK(static_cast<unsigned char>(bytes[i]) == 128);
}

TEST_CASE("render_composite: known extremes map to exact bytes") {
  Tensor3 t(2, 2, 3);
  // band 0: 0..3 ramp; bands 1,2 constant
  t(0, 0, 0) = 0.0;
  t(1, 0, 0) = 1.0;
  t(0, 1, 0) = 2.0;
  t(1, 1, 0) = 3.0;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      t(i, j, 1) = 7.0;
      t(i, j, 2) = -1.0;
    }
  TempFile tmp("test_io_bytes.ppm");
  render_composite(t, {0, 1, 2}, tmp.path);
  const std::vector<char> bytes = slurp(tmp.path);
  const std::string header = "P6\n2 2\n255\n";
  auto px = [&](int i, int j, int c) {
    return static_cast<unsigned char>(
        bytes[header.size() + 3 * (i + 2 * j) + c]);
  };
  CHECK(px(0, 0, 0) == 0);
  CHECK(px(1, 0, 0) == 85);
  CHECK(px(0, 1, 0) == 170);
  CHECK(px(1, 1, 0) == 255);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      CHECK(px(i, j, 1) == 128);
      CHECK(px(i, j, 2) == 128);
    }
}

TEST_CASE("render_composite: grayscale when all channels share a band") {
  std::mt19937_64 rng(419);
  const Tensor3 t = random_tensor(5, 4, 3, rng);
  TempFile tmp("test_io_graymap.ppm");
  render_composite(t, {1, 1, 1}, tmp.path);
  const std::vector<char> bytes = slurp(tmp.path);
  const std::string header = "P6\n5 4\n255\n";
  for (std::size_t p = header.size(); p < bytes.size(); p += 3) {
    CHECK(bytes[p] == bytes[p + 1]);
    CHECK(bytes[p] == bytes[p + 2]);
  }
}

TEST_CASE("render_composite: band index out of range rejected") {
  Tensor3 t(2, 2, 2);
  CHECK_THROWS_AS(render_composite(t, {0, 1, 2}, "test_io_oob.ppm"),
                  std::invalid_argument);
  CHECK_THROWS_AS(render_composite(t, {-1, 0, 0}, "test_io_oob.ppm"),
                  std::invalid_argument);
}
