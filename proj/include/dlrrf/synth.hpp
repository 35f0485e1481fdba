// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "dlrrf/degradation.hpp"
#include "dlrrf/tensor.hpp"

namespace dlrrf {

/// Synthetic scene recipe: a linear-mixing ground truth plus controllable
/// inter-image variability (SRF drift and a changed region).
struct SceneSpec {
  int W = 64, H = 64, S = 50;
  int n_endmembers = 4;
  std::uint64_t seed = 0;
  double dr_magnitude = 0.0;
  double change_fraction = 0.0;
};

/// Linear mixing model: smooth positive endmember spectra combined by
/// softmax-normalized smoothed abundance fields. Entries in [0,1];
/// per-pixel abundances sum to 1; mode-3 rank <= n_endmembers.
Tensor3 generate_scene(const SceneSpec& spec);

struct VariabilityPair {
  Tensor3 y;          // observed HSI (from the original scene)
  Tensor3 z;          // observed MSI (from the changed scene, true SRF)
  Mat srf_true;       // R + dR_true, clipped and row-renormalized
  Tensor3 x_changed;  // scene with the localized change applied
};

/// Builds the observation pair of one variability scenario. The HSI is
/// simulated from the original x; the MSI carries both variability forms
/// (SRF drift and the changed rectangle).
VariabilityPair make_variability_pair(const Tensor3& x, const SceneSpec& spec,
                                      const DegradationModel& model);

}  // namespace dlrrf
