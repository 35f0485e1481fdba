// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace dlrrf {
namespace {

constexpr char kMagic[8] = {'D', 'L', 'R', 'R', 'F', 'T', '3', '\0'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "tensor file I/O assumes a little-endian host");

void put_u32(std::ofstream& f, std::uint32_t v) {
  f.write(reinterpret_cast<const char*>(&v), 4);
}

std::uint32_t get_u32(std::ifstream& f) {
  std::uint32_t v = 0;
  f.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

}  // namespace

void write_tensor(const std::string& path, const Tensor3& t) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("write_tensor: cannot open " + path);
  f.write(kMagic, 8);
  put_u32(f, kVersion);
  put_u32(f, static_cast<std::uint32_t>(t.d1));
  put_u32(f, static_cast<std::uint32_t>(t.d2));
  put_u32(f, static_cast<std::uint32_t>(t.d3));
  f.write(reinterpret_cast<const char*>(t.data.data()),
          static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (!f) throw std::runtime_error("write_tensor: write failed: " + path);
}

Tensor3 read_tensor(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_tensor: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("read_tensor: bad magic in " + path);
  const std::uint32_t version = get_u32(f);
  if (!f || version != kVersion)
    throw std::runtime_error("read_tensor: unsupported version in " + path);
  const std::uint32_t d1 = get_u32(f), d2 = get_u32(f), d3 = get_u32(f);
  if (!f || d1 == 0 || d2 == 0 || d3 == 0)
    throw std::runtime_error("read_tensor: bad dims in " + path);
  Tensor3 t(static_cast<int>(d1), static_cast<int>(d2), static_cast<int>(d3));
  f.read(reinterpret_cast<char*>(t.data.data()),
         static_cast<std::streamsize>(t.size() * sizeof(double)));
  if (f.gcount() != static_cast<std::streamsize>(t.size() * sizeof(double)))
    throw std::runtime_error("read_tensor: size mismatch in " + path);
  // reject trailing garbage
  char extra;
  f.read(&extra, 1);
  if (f.gcount() != 0)
    throw std::runtime_error("read_tensor: size mismatch in " + path);
  return t;
}

void write_matrix(const std::string& path, const Mat& m) {
  Tensor3 t(m.rows, m.cols, 1);
  t.data = m.data;
  write_tensor(path, t);
}

Mat read_matrix(const std::string& path) {
  const Tensor3 t = read_tensor(path);
  if (t.d3 != 1)
    throw std::runtime_error("read_matrix: expected d3 == 1 in " + path);
  Mat m(t.d1, t.d2);
  m.data = t.data;
  return m;
}

void render_composite(const Tensor3& x, const std::array<int, 3>& bands,
                      const std::string& path) {
  for (int b : bands)
    if (b < 0 || b >= x.d3)
      throw std::invalid_argument("render_composite: band index out of range");

  const std::size_t plane = static_cast<std::size_t>(x.d1) * x.d2;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("render_composite: cannot open " + path);
  f << "P6\n" << x.d1 << " " << x.d2 << "\n255\n";

  std::array<double, 3> lo{}, scale{};
  for (int c = 0; c < 3; ++c) {
    const double* band = &x.data[plane * bands[c]];
    double mn = band[0], mx = band[0];
    for (std::size_t i = 0; i < plane; ++i) {
      mn = std::min(mn, band[i]);
      mx = std::max(mx, band[i]);
    }
    lo[c] = mn;
    scale[c] = mx > mn ? 255.0 / (mx - mn) : 0.0;
  }

  std::vector<unsigned char> row(static_cast<std::size_t>(x.d1) * 3);
  for (int j = 0; j < x.d2; ++j) {
    for (int i = 0; i < x.d1; ++i)
      for (int c = 0; c < 3; ++c) {
        const double v = x(i, j, bands[c]);
        const double norm =
            scale[c] > 0.0 ? (v - lo[c]) * scale[c] : 127.5;
        row[3 * static_cast<std::size_t>(i) + c] =
            static_cast<unsigned char>(std::lround(std::clamp(norm, 0.0, 255.0)));
      }
    f.write(reinterpret_cast<const char*>(row.data()),
            static_cast<std::streamsize>(row.size()));
  }
  if (!f) throw std::runtime_error("render_composite: write failed: " + path);
}

}  // namespace dlrrf
