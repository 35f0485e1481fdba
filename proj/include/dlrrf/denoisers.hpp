// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "dlrrf/tensor.hpp"

namespace dlrrf {

/// Pluggable spatial prior. Strength 0 is the identity for every kind.
///   identity   - returns the input bitwise
///   gaussian   - separable per-band blur, sigma = 10 * strength
///   haar_soft  - per-band 2-level separable Haar transform, detail
///                coefficients soft-thresholded by strength
struct DenoiserKind {
  enum class Kind { identity, gaussian, haar_soft };
  Kind kind = Kind::haar_soft;
  int levels = 2;  // haar_soft only
};

Tensor3 denoise(const Tensor3& t, const DenoiserKind& kind, double strength);

DenoiserKind parse_denoiser_kind(const std::string& name);
std::string denoiser_kind_name(const DenoiserKind& kind);

}  // namespace dlrrf
