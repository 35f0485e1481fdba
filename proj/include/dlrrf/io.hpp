// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>

#include "dlrrf/tensor.hpp"

namespace dlrrf {

/// Tensor file: 8-byte magic "DLRRFT3\0", u32 LE version (= 1), u32 LE
/// d1 d2 d3, then d1*d2*d3 IEEE-754 f64 LE scalars in layout order.
/// Round trips are bitwise.
void write_tensor(const std::string& path, const Tensor3& t);
Tensor3 read_tensor(const std::string& path);

/// Matrices travel as (rows, cols, 1) tensors.
void write_matrix(const std::string& path, const Mat& m);
Mat read_matrix(const std::string& path);

/// Binary P6 portable pixmap of three bands, each channel min-max
/// normalized to 0..255.
void render_composite(const Tensor3& x, const std::array<int, 3>& bands,
                      const std::string& path);

}  // namespace dlrrf
