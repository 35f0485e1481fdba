// SPDX-License-Identifier: Apache-2.0
//
// Pipeline driver: synth -> degrade -> fuse -> eval -> render.
#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "dlrrf/degradation.hpp"
#include "dlrrf/io.hpp"
#include "dlrrf/metrics.hpp"
#include "dlrrf/solver.hpp"
#include "dlrrf/synth.hpp"

namespace {

using namespace dlrrf;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_sidecar(const std::string& path, const SceneSpec& spec) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write sidecar: " + path);
  f << "W=" << spec.W << "\n"
    << "H=" << spec.H << "\n"
    << "S=" << spec.S << "\n"
    << "endmembers=" << spec.n_endmembers << "\n"
    << "seed=" << spec.seed << "\n"
    << "dr_mag=" << fmt17(spec.dr_magnitude) << "\n"
    << "change_frac=" << fmt17(spec.change_fraction) << "\n";
}

SceneSpec read_sidecar(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open sidecar: " + path);
  SceneSpec spec;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("sidecar: malformed line: " + line);
    const std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    if (key == "W") spec.W = std::stoi(val);
    else if (key == "H") spec.H = std::stoi(val);
    else if (key == "S") spec.S = std::stoi(val);
    else if (key == "endmembers") spec.n_endmembers = std::stoi(val);
    else if (key == "seed") spec.seed = std::stoull(val);
    else if (key == "dr_mag") spec.dr_magnitude = std::stod(val);
    else if (key == "change_frac") spec.change_fraction = std::stod(val);
    else throw std::runtime_error("sidecar: unknown key: " + key);
  }
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{"DLRRF hyperspectral-multispectral fusion pipeline"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a ground-truth scene");
  std::string synth_out;
  SceneSpec spec;
  synth->add_option("--out", synth_out, "output tensor path")->required();
  synth->add_option("--W", spec.W);
  synth->add_option("--H", spec.H);
  synth->add_option("--S", spec.S);
  synth->add_option("--endmembers", spec.n_endmembers);
  synth->add_option("--seed", spec.seed);
  synth->add_option("--dr-mag", spec.dr_magnitude);
  synth->add_option("--change-frac", spec.change_fraction);

  // degrade
  auto* degrade = app.add_subcommand("degrade", "simulate the observations");
  std::string deg_in, deg_y, deg_z, deg_r;
  int deg_sf = 4, deg_s = 6;
  double deg_sigma = 1.0, deg_hsi_snr = 30.0, deg_msi_snr = 40.0;
  std::uint64_t deg_seed = 0;
  bool deg_seed_set = false;
  degrade->add_option("--in", deg_in, "truth tensor (sidecar read from <in>.meta)")
      ->required();
  degrade->add_option("--sf", deg_sf, "spatial downsampling factor");
  degrade->add_option("--blur-sigma", deg_sigma);
  degrade->add_option("--hsi-snr", deg_hsi_snr, "dB; 'inf' disables noise");
  degrade->add_option("--msi-snr", deg_msi_snr);
  degrade->add_option("--s", deg_s, "number of MSI bands");
  degrade
      ->add_option_function<std::uint64_t>(
          "--seed",
          [&](const std::uint64_t& v) {
            deg_seed = v;
            deg_seed_set = true;
          },
          "override the scene seed for the noise realizations")
      ->expected(1);
  degrade->add_option("--y", deg_y, "output HSI path")->required();
  degrade->add_option("--z", deg_z, "output MSI path")->required();
  degrade->add_option("--r", deg_r, "output nominal SRF path")->required();

  // fuse
  auto* fuse = app.add_subcommand("fuse", "run the fusion solver");
  std::string fuse_y, fuse_z, fuse_r, fuse_cfg, fuse_out, fuse_srf, fuse_trace;
  double fuse_sigma = 1.0;
  fuse->add_option("--blur-sigma", fuse_sigma,
                   "blur assumed for P1/P2 (must match the degradation)");
  fuse->add_option("--y", fuse_y)->required();
  fuse->add_option("--z", fuse_z)->required();
  fuse->add_option("--r", fuse_r)->required();
  fuse->add_option("--config", fuse_cfg, "key=value config file");
  fuse->add_option("--out", fuse_out, "fused tensor path")->required();
  fuse->add_option("--srf-out", fuse_srf, "estimated SRF path");
  fuse->add_option("--trace", fuse_trace, "iteration trace CSV path");

  // eval
  auto* eval = app.add_subcommand("eval", "compute quality metrics");
  std::string eval_ref, eval_est, eval_out, eval_bands;
  int eval_sf = 4;
  eval->add_option("--ref", eval_ref)->required();
  eval->add_option("--est", eval_est)->required();
  eval->add_option("--sf", eval_sf);
  eval->add_option("--out", eval_out, "metrics CSV path")->required();
  eval->add_option("--per-band", eval_bands, "per-band PSNR CSV path");

  // render
  auto* render = app.add_subcommand("render", "write a P6 color composite");
  std::string ren_in, ren_out, ren_bands = "0,1,2";
  render->add_option("--in", ren_in)->required();
  render->add_option("--bands", ren_bands, "r,g,b band indices");
  render->add_option("--out", ren_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  if (synth->parsed()) {
    const Tensor3 x = generate_scene(spec);
    write_tensor(synth_out, x);
    write_sidecar(synth_out + ".meta", spec);
    return 0;
  }

  if (degrade->parsed()) {
    SceneSpec sc = read_sidecar(deg_in + ".meta");
    if (deg_seed_set) sc.seed = deg_seed;
    const Tensor3 x = read_tensor(deg_in);
    DegradationModel model;
    model.sf = deg_sf;
    model.blur_sigma = deg_sigma;
    model.hsi_snr_db = deg_hsi_snr;
    model.msi_snr_db = deg_msi_snr;
    model.p1 = blur_downsample_matrix(x.d1, deg_sf, deg_sigma);
    model.p2 = blur_downsample_matrix(x.d2, deg_sf, deg_sigma);
    model.r = band_average_srf(x.d3, deg_s);
    const VariabilityPair pair = make_variability_pair(x, sc, model);
    write_tensor(deg_y, pair.y);
    write_tensor(deg_z, pair.z);
    write_matrix(deg_r, model.r);
    return 0;
  }

  if (fuse->parsed()) {
    FusionInputs in;
    in.y = read_tensor(fuse_y);
    in.z = read_tensor(fuse_z);
    in.r = read_matrix(fuse_r);
    if (in.y.d1 == 0 || in.z.d1 % in.y.d1 != 0 || in.z.d2 % in.y.d2 != 0)
      throw std::runtime_error("fuse: y/z spatial dims not related by an integer factor");
    const int sf = in.z.d1 / in.y.d1;
    in.p1 = blur_downsample_matrix(in.z.d1, sf, fuse_sigma);
    in.p2 = blur_downsample_matrix(in.z.d2, sf, fuse_sigma);
    DlrrfConfig cfg;
    if (!fuse_cfg.empty()) cfg = load_config_file(fuse_cfg);
    const FusionResult res = run_fusion(in, cfg);
    write_tensor(fuse_out, res.x_hat);
    if (!fuse_srf.empty()) write_matrix(fuse_srf, res.srf_hat);
    if (!fuse_trace.empty()) write_trace_csv(fuse_trace, res);
    return 0;
  }

  if (eval->parsed()) {
    const Tensor3 ref = read_tensor(eval_ref);
    const Tensor3 est = read_tensor(eval_est);
    const MetricReport rep = evaluate(ref, est, eval_sf);
    write_metrics_csv(eval_out, rep);
    if (!eval_bands.empty()) write_per_band_psnr_csv(eval_bands, rep);
    return 0;
  }

  if (render->parsed()) {
    const Tensor3 x = read_tensor(ren_in);
    std::array<int, 3> bands{};
    std::stringstream ss(ren_bands);
    std::string tok;
    int idx = 0;
    while (std::getline(ss, tok, ',') && idx < 3) bands[idx++] = std::stoi(tok);
    if (idx != 3) throw CLI::ValidationError("--bands needs r,g,b");
    render_composite(x, bands, ren_out);
    return 0;
  }

  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
