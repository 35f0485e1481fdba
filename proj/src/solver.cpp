// SPDX-License-Identifier: Apache-2.0
#include "dlrrf/solver.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace dlrrf {
namespace {

double rel_change(double dist, double prev_norm) {
  if (prev_norm == 0.0)
    return dist == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return dist / prev_norm;
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DlrrfSolver::DlrrfSolver(FusionInputs inputs, SubspacePair dict,
                         DlrrfConfig cfg)
    : in_(std::move(inputs)), dict_(std::move(dict)), cfg_(cfg) {
  const int W = in_.p1.cols, H = in_.p2.cols, S = in_.r.cols;
  if (in_.y.d1 != in_.p1.rows || in_.y.d2 != in_.p2.rows || in_.y.d3 != S ||
      in_.z.d1 != W || in_.z.d2 != H || in_.z.d3 != in_.r.rows)
    throw std::invalid_argument("DlrrfSolver: dimension mismatch");
  if (dict_.d_l.rows != S || dict_.s1 != dict_.d_l.cols)
    throw std::invalid_argument("DlrrfSolver: dictionary mismatch");
  if (W % in_.y.d1 != 0 || H % in_.y.d2 != 0)
    throw std::invalid_argument("DlrrfSolver: sf must divide W and H");

  ridge_l_.emplace(in_.p1, in_.p2, dict_.d_l);
  if (dict_.s2 > 0) ridge_e_.emplace(in_.p1, in_.p2, dict_.d_e);
  y3_ = unfold(in_.y, 3);
  z3_ = unfold(in_.z, 3);
}

Tensor3 upsample_nearest(const Tensor3& t, int sf) {
  if (sf < 1) throw std::invalid_argument("upsample_nearest: sf < 1");
  Tensor3 out(t.d1 * sf, t.d2 * sf, t.d3);
  for (int k = 0; k < t.d3; ++k)
    for (int j = 0; j < out.d2; ++j)
      for (int i = 0; i < out.d1; ++i)
        out(i, j, k) = t(i / sf, j / sf, k);
  return out;
}

Mat DlrrfSolver::srf(const DlrrfState& s) const {
  return mat_add(in_.r, s.dr);
}

DlrrfState DlrrfSolver::initial_state() const {
  DlrrfState s;
  const int sf = in_.p1.cols / in_.p1.rows;
  // scale-correct warm start: nearest-neighbor upsample projected onto D_L
  const Tensor3 y_up = upsample_nearest(in_.y, sf);
  s.l = mode_n_product(y_up, transpose(dict_.d_l), 3);
  s.has_e = dict_.s2 > 0;
  s.e = s.has_e ? Tensor3(in_.p1.cols, in_.p2.cols, dict_.s2) : Tensor3(1, 1, 1);
  s.dr = Mat(in_.r.rows, in_.r.cols);
  s.a = s.l;
  s.b = s.l;
  s.c = s.e;
  s.iter = 0;
  return s;
}

double DlrrfSolver::surrogate(const DlrrfState& s) const {
  Tensor3 y_fit = mode_n_product(
      mode_n_product(mode_n_product(s.l, in_.p1, 1), in_.p2, 2), dict_.d_l, 3);
  const Mat p3 = srf(s);
  Tensor3 z_fit = mode_n_product(s.l, matmul(p3, dict_.d_l), 3);
  if (s.has_e) {
    y_fit = tensor_add(
        y_fit, mode_n_product(mode_n_product(mode_n_product(s.e, in_.p1, 1),
                                             in_.p2, 2),
                              dict_.d_e, 3));
    z_fit = tensor_add(z_fit, mode_n_product(s.e, matmul(p3, dict_.d_e), 3));
  }
  const double dy = frob_dist(y_fit, in_.y);
  const double dz = frob_dist(z_fit, in_.z);
  return dy * dy + cfg_.tau * dz * dz;
}

double DlrrfSolver::explicit_objective(const DlrrfState& s) const {
  const double ln = frob_norm(s.l);
  return surrogate(s) + cfg_.lambda * ln * ln;
}

void DlrrfSolver::update_L(DlrrfState& s) const {
  const double eta = cfg_.eta, mu = cfg_.mu;
  const double xi1 = 0.5 * (eta + 2.0 * mu);
  const Tensor3 l_outer = s.l;  // proximal anchor L^k

  // Y1 = Y - E x1 P1 x2 P2 x3 D_E (E fixed during this block)
  Tensor3 y1 = in_.y;
  if (s.has_e) {
    const Tensor3 e_obs = mode_n_product(
        mode_n_product(mode_n_product(s.e, in_.p1, 1), in_.p2, 2), dict_.d_e,
        3);
    y1 = tensor_sub(in_.y, e_obs);
  }

  const Mat p3 = srf(s);
  const Mat f_l = matmul(p3, dict_.d_l);  // s x S1
  // Omega_1 = 2 tau F_L^T F_L + mu I
  Mat omega1 = mat_scale(matmul_tn(f_l, f_l), 2.0 * cfg_.tau);
  for (int i = 0; i < omega1.rows; ++i) omega1(i, i) += mu;
  // residual MSI target for the A step
  Mat z_res = z3_;
  if (s.has_e) {
    const Mat f_e = matmul(p3, dict_.d_e);
    z_res = mat_sub(z3_, matmul(f_e, unfold(s.e, 3)));
  }

  for (int sweep = 0; sweep < cfg_.inner_sweeps; ++sweep) {
    // L step (separable ridge closed form)
    Tensor3 m1 = tensor_scale(l_outer, eta);
    m1 = tensor_add_scaled(m1, mu, s.a);
    m1 = tensor_add_scaled(m1, mu, s.b);
    m1 = tensor_scale(m1, 1.0 / (eta + 2.0 * mu));
    s.l = ridge_l_->solve(y1, xi1, m1);

    // A step (S1 x S1 normal equations)
    const Mat l3 = unfold(s.l, 3);
    const Mat omega2 = mat_add(
        mat_scale(matmul_tn(f_l, z_res), 2.0 * cfg_.tau), mat_scale(l3, mu));
    const Mat a3 = cholesky_solve(omega1, omega2);
    s.a = fold(a3, 3, s.l.d1, s.l.d2, s.l.d3);

    // B step: plugged denoiser, or the exact proximal map of lambda||.||^2
    if (cfg_.reg_mode == RegMode::pnp) {
      s.b = denoise(s.l, cfg_.denoiser, cfg_.lambda / mu);
    } else {
      s.b = tensor_scale(s.l, mu / (2.0 * cfg_.lambda + mu));
    }
  }
}

void DlrrfSolver::update_E(DlrrfState& s) const {
  if (!s.has_e) return;
  const double eta = cfg_.eta, mu = cfg_.mu;
  const double xi2 = 0.5 * (eta + mu);
  const Tensor3 e_outer = s.e;

  const Tensor3 l_obs = mode_n_product(
      mode_n_product(mode_n_product(s.l, in_.p1, 1), in_.p2, 2), dict_.d_l, 3);
  const Tensor3 y2 = tensor_sub(in_.y, l_obs);

  const Mat p3 = srf(s);
  const Mat f_e = matmul(p3, dict_.d_e);
  Mat omega1 = mat_scale(matmul_tn(f_e, f_e), 2.0 * cfg_.tau);
  for (int i = 0; i < omega1.rows; ++i) omega1(i, i) += mu;
  const Mat f_l = matmul(p3, dict_.d_l);
  const Mat z_res = mat_sub(z3_, matmul(f_l, unfold(s.l, 3)));

  for (int sweep = 0; sweep < cfg_.inner_sweeps; ++sweep) {
    Tensor3 m2 = tensor_scale(e_outer, eta);
    m2 = tensor_add_scaled(m2, mu, s.c);
    m2 = tensor_scale(m2, 1.0 / (eta + mu));
    s.e = ridge_e_->solve(y2, xi2, m2);

    const Mat e3 = unfold(s.e, 3);
    const Mat omega2 = mat_add(
        mat_scale(matmul_tn(f_e, z_res), 2.0 * cfg_.tau), mat_scale(e3, mu));
    const Mat c3 = cholesky_solve(omega1, omega2);
    s.c = fold(c3, 3, s.e.d1, s.e.d2, s.e.d3);
  }
}

void DlrrfSolver::update_dR(DlrrfState& s) const {
  if (!cfg_.update_dr) return;
  // G = D_L L + D_E E  (S x WH)
  Mat g = matmul(dict_.d_l, unfold(s.l, 3));
  if (s.has_e) g = mat_add(g, matmul(dict_.d_e, unfold(s.e, 3)));

  Mat omega1 = mat_scale(matmul_nt(g, g), 2.0 * cfg_.tau);
  for (int i = 0; i < omega1.rows; ++i) omega1(i, i) += cfg_.eta;
  const Mat resid = mat_sub(z3_, matmul(in_.r, g));
  const Mat omega2 = mat_add(mat_scale(matmul_nt(resid, g), 2.0 * cfg_.tau),
                             mat_scale(s.dr, cfg_.eta));
  // dR Omega_1 = Omega_2, Omega_1 SPD
  s.dr = transpose(cholesky_solve(omega1, transpose(omega2)));
}

Tensor3 DlrrfSolver::reconstruct(const DlrrfState& s) const {
  Tensor3 x = mode_n_product(s.l, dict_.d_l, 3);
  if (s.has_e) x = tensor_add(x, mode_n_product(s.e, dict_.d_e, 3));
  return x;
}

FusionResult DlrrfSolver::run() const {
  DlrrfState s = initial_state();
  FusionResult res;

  for (int k = 0; k < cfg_.max_outer; ++k) {
    const Tensor3 l_prev = s.l;
    const Tensor3 e_prev = s.e;
    const Mat dr_prev = s.dr;

    update_L(s);
    update_E(s);
    update_dR(s);
    s.iter = k + 1;

    if (!all_finite(s.l) || !all_finite(s.e) || !all_finite(s.dr))
      throw std::runtime_error("dlrrf: non-finite iterate (divergence)");

    double eta_k = rel_change(frob_dist(s.l, l_prev), frob_norm(l_prev));
    if (s.has_e)
      eta_k =
          std::max(eta_k, rel_change(frob_dist(s.e, e_prev), frob_norm(e_prev)));
    if (cfg_.update_dr)
      eta_k = std::max(eta_k,
                       rel_change(frob_dist(s.dr, dr_prev), frob_norm(dr_prev)));

    const double h = surrogate(s);
    res.objective_trace.push_back(h);
    if (cfg_.reg_mode == RegMode::explicit_l2) {
      const double ln = frob_norm(s.l);
      res.explicit_trace.push_back(h + cfg_.lambda * ln * ln);
    }
    res.eta_trace.push_back(eta_k);

    if (eta_k < cfg_.epsilon) {
      res.converged = true;
      break;
    }
  }

  res.iterations = s.iter;
  res.x_hat = reconstruct(s);
  res.srf_hat = mat_add(in_.r, s.dr);
  return res;
}

FusionResult run_fusion(const FusionInputs& inputs, const DlrrfConfig& cfg) {
  const SubspacePair dict = estimate_dictionaries(inputs.y, cfg.s1, cfg.s2);
  return DlrrfSolver(inputs, dict, cfg).run();
}

DlrrfConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  DlrrfConfig cfg;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: malformed line: " + line);
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      s = a == std::string::npos ? "" : s.substr(a, b - a + 1);
    };
    trim(key);
    trim(val);
    if (key == "tau") cfg.tau = std::stod(val);
    else if (key == "lambda") cfg.lambda = std::stod(val);
    else if (key == "eta") cfg.eta = std::stod(val);
    else if (key == "mu") cfg.mu = std::stod(val);
    else if (key == "s1") cfg.s1 = std::stoi(val);
    else if (key == "s2") cfg.s2 = std::stoi(val);
    else if (key == "max_outer") cfg.max_outer = std::stoi(val);
    else if (key == "inner_sweeps") cfg.inner_sweeps = std::stoi(val);
    else if (key == "epsilon") cfg.epsilon = std::stod(val);
    else if (key == "denoiser") cfg.denoiser = parse_denoiser_kind(val);
    else if (key == "reg_mode")
      cfg.reg_mode = val == "explicit_l2" ? RegMode::explicit_l2 : RegMode::pnp;
    else if (key == "update_dr") cfg.update_dr = val == "1" || val == "true";
    else throw std::runtime_error("config: unknown key: " + key);
  }
  return cfg;
}

void save_config_file(const std::string& path, const DlrrfConfig& cfg) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write config file: " + path);
  f << "tau=" << fmt17(cfg.tau) << "\n"
    << "lambda=" << fmt17(cfg.lambda) << "\n"
    << "eta=" << fmt17(cfg.eta) << "\n"
    << "mu=" << fmt17(cfg.mu) << "\n"
    << "s1=" << cfg.s1 << "\n"
    << "s2=" << cfg.s2 << "\n"
    << "max_outer=" << cfg.max_outer << "\n"
    << "inner_sweeps=" << cfg.inner_sweeps << "\n"
    << "epsilon=" << fmt17(cfg.epsilon) << "\n"
    << "denoiser=" << denoiser_kind_name(cfg.denoiser) << "\n"
    << "reg_mode=" << (cfg.reg_mode == RegMode::pnp ? "pnp" : "explicit_l2")
    << "\n"
    << "update_dr=" << (cfg.update_dr ? "true" : "false") << "\n";
}

void write_trace_csv(const std::string& path, const FusionResult& res) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write trace file: " + path);
  f << "iter,h,f_explicit,eta_k\n";
  for (std::size_t i = 0; i < res.objective_trace.size(); ++i) {
    f << (i + 1) << ',' << fmt17(res.objective_trace[i]) << ',';
    if (i < res.explicit_trace.size()) f << fmt17(res.explicit_trace[i]);
    f << ',' << fmt17(res.eta_trace[i]) << '\n';
  }
}

}  // namespace dlrrf
