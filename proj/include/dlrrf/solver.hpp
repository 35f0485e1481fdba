// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlrrf/denoisers.hpp"
#include "dlrrf/subspace.hpp"
#include "dlrrf/tensor_ops.hpp"

namespace dlrrf {

enum class RegMode { pnp, explicit_l2 };

struct DlrrfConfig {
  double tau = 0.1;
  double lambda = 0.01;
  double eta = 0.01;
  double mu = 0.05;
  int s1 = 4;
  int s2 = 2;
  int max_outer = 200;
  int inner_sweeps = 1;
  double epsilon = 1e-4;
  // the plugged prior; identity keeps the default run purely data-driven
  DenoiserKind denoiser{DenoiserKind::Kind::identity, 2};
  RegMode reg_mode = RegMode::pnp;
  bool update_dr = true;  // freeze dR at 0 when false (ablation)
};

DlrrfConfig load_config_file(const std::string& path);
void save_config_file(const std::string& path, const DlrrfConfig& cfg);

/// Observed data plus the operators the solver treats as known.
struct FusionInputs {
  Tensor3 y;  // w x h x S
  Tensor3 z;  // W x H x s
  Mat p1;     // w x W
  Mat p2;     // h x H
  Mat r;      // s x S nominal SRF
};

struct DlrrfState {
  Tensor3 l;       // W x H x S1
  Tensor3 e;       // W x H x S2 (dims 1x1x1 placeholder when s2 == 0)
  Mat dr;          // s x S
  Tensor3 a, b;    // auxiliaries for the L block
  Tensor3 c;       // auxiliary for the E block
  int iter = 0;
  bool has_e = true;
};

struct FusionResult {
  Tensor3 x_hat;
  Mat srf_hat;  // r + dr
  std::vector<double> objective_trace;  // surrogate h per outer iteration
  std::vector<double> explicit_trace;   // h + lambda*||L||^2 (explicit mode)
  std::vector<double> eta_trace;
  int iterations = 0;
  bool converged = false;
};

/// The PAO iteration on the DLRRF objective. Dictionaries are supplied
/// explicitly; run_fusion() below estimates them from y first.
class DlrrfSolver {
 public:
  DlrrfSolver(FusionInputs inputs, SubspacePair dict, DlrrfConfig cfg);

  DlrrfState initial_state() const;

  /// Data-fidelity surrogate h(L, E, dR).
  double surrogate(const DlrrfState& s) const;
  /// h + lambda * ||L||_F^2 (the explicit_l2 objective f).
  double explicit_objective(const DlrrfState& s) const;

  /// One outer block update each; mutate the state in place.
  void update_L(DlrrfState& s) const;
  void update_E(DlrrfState& s) const;
  void update_dR(DlrrfState& s) const;

  /// Full outer loop with trace recording and the relative-change stop.
  FusionResult run() const;

  Tensor3 reconstruct(const DlrrfState& s) const;

  const SubspacePair& dict() const { return dict_; }
  const DlrrfConfig& config() const { return cfg_; }
  const FusionInputs& inputs() const { return in_; }

 private:
  Mat srf(const DlrrfState& s) const;  // r + dr
  FusionInputs in_;
  SubspacePair dict_;
  DlrrfConfig cfg_;
  std::optional<SeparableRidge> ridge_l_;
  std::optional<SeparableRidge> ridge_e_;
  Mat y3_;  // mode-3 unfolding of y (cached)
  Mat z3_;  // mode-3 unfolding of z
};

/// Estimates dictionaries from y, builds the solver, runs it.
FusionResult run_fusion(const FusionInputs& inputs, const DlrrfConfig& cfg);

/// Nearest-neighbor upsampling of each band by factor sf (baseline and
/// solver initialization).
Tensor3 upsample_nearest(const Tensor3& t, int sf);

void write_trace_csv(const std::string& path, const FusionResult& res);

}  // namespace dlrrf
