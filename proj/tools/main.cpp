// Command-line front end: degradation, hallucination, evaluation and the
// tiny-instance oracle cross-check.
//
// Exit codes: 0 success, 1 usage error, 2 runtime failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "cvxsr/image_io.hpp"
#include "cvxsr/metrics.hpp"
#include "cvxsr/oracle.hpp"
#include "cvxsr/pd_solver.hpp"
#include "cvxsr/pipeline.hpp"

namespace {

bool g_quiet = false;

void note(const std::string &msg) {
  if (!g_quiet) std::fprintf(stderr, "%s\n", msg.c_str());
}

void emit(const std::string &key, const std::string &value) {
  std::printf("%s=%s\n", key.c_str(), value.c_str());
}

void emit(const std::string &key, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  emit(key, std::string(buf));
}

void emit(const std::string &key, long value) {
  emit(key, std::to_string(value));
}

int run_degrade(const std::string &hr_path, int scale,
                const std::string &out_lr, const std::string &out_up) {
  const cvxsr::MultiImage hr = cvxsr::load_image(hr_path);
  const cvxsr::DegradeResult deg = cvxsr::degrade(hr, scale);
  cvxsr::save_image(deg.lr, out_lr);
  note("wrote " + out_lr);
  if (!out_up.empty()) {
    cvxsr::save_image(deg.lr_upsampled, out_up);
    note("wrote " + out_up);
  }
  emit("lr_width", static_cast<long>(deg.lr.width()));
  emit("lr_height", static_cast<long>(deg.lr.height()));
  emit("baseline_psnr_db", cvxsr::psnr(deg.lr_upsampled, hr));
  emit("baseline_ssim", cvxsr::ssim(deg.lr_upsampled, hr));
  return 0;
}

int run_hallucinate(const std::string &lr_path,
                    const std::vector<std::string> &candidate_paths, int scale,
                    const std::string &out_path,
                    const cvxsr::SolverConfig &cfg) {
  const cvxsr::MultiImage lr = cvxsr::load_image(lr_path);

  cvxsr::CandidateSet candidates;
  for (const std::string &p : candidate_paths) {
    candidates.images.push_back(cvxsr::load_image(p));
    candidates.sources.push_back(p);
  }

  note("solving " + std::to_string(lr.channel_count()) + " channel(s), " +
       std::to_string(candidates.images.size()) + " candidate(s)");
  const cvxsr::HallucinateResult res =
      cvxsr::hallucinate(lr, candidates, scale, cfg);
  cvxsr::save_image(res.image, out_path);
  note("wrote " + out_path);

  for (size_t c = 0; c < res.channel_diagnostics.size(); ++c) {
    const cvxsr::SolveDiagnostics &d = res.channel_diagnostics[c];
    const std::string prefix = "channel" + std::to_string(c) + "_";
    emit(prefix + "iterations", static_cast<long>(d.iterations_run));
    emit(prefix + "initial_energy", d.energy_trace.front());
    emit(prefix + "final_energy", d.energy_trace.back());
    emit(prefix + "final_rel_change", d.rel_change_trace.back());
    emit(prefix + "cg_total_iters", static_cast<long>(d.cg_total_iters));
    emit(prefix + "op_norm", d.op_norm);
  }
  return 0;
}

int run_evaluate(const std::string &a_path, const std::string &b_path) {
  const cvxsr::MultiImage a = cvxsr::load_image(a_path);
  const cvxsr::MultiImage b = cvxsr::load_image(b_path);
  const cvxsr::QualityReport report = cvxsr::evaluate_quality(a, b);
  emit("psnr_db", report.psnr_db);
  emit("ssim", report.ssim);
  for (size_t c = 0; c < report.psnr_per_channel.size(); ++c) {
    emit("psnr_db_channel" + std::to_string(c), report.psnr_per_channel[c]);
    emit("ssim_channel" + std::to_string(c), report.ssim_per_channel[c]);
  }
  return 0;
}

int run_oracle_check(int size, int n_candidates, int scale, double lambda,
                     double gamma, const cvxsr::OracleConfig &ocfg,
                     uint64_t seed) {
  note("comparing primal-dual and oracle energies on a " +
       std::to_string(size) + "x" + std::to_string(size) + " instance");
  const cvxsr::OracleCheckResult r =
      cvxsr::oracle_check(size, n_candidates, scale, lambda, gamma, ocfg, seed);
  emit("pd_energy", r.pd_energy);
  emit("oracle_energy", r.oracle_energy);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.8f", r.rel_gap);
  emit("rel_gap", std::string(buf));
  if (r.rel_gap > 0.005) {
    std::fprintf(stderr, "oracle gap %.6f exceeds 0.005\n", r.rel_gap);
    return 2;
  }
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Convex single-image super-resolution with exemplar-based "
               "hallucination"};
  app.require_subcommand(1);
  app.add_flag("--quiet,-q", g_quiet, "suppress progress messages");

  // degrade
  std::string deg_hr, deg_out_lr, deg_out_up;
  int deg_scale = 4;
  CLI::App *deg = app.add_subcommand(
      "degrade", "bicubic-downsample an HR image and report the bicubic "
                 "re-upsampling baseline");
  deg->add_option("--hr", deg_hr, "HR ground-truth image")->required();
  deg->add_option("--scale", deg_scale, "integer scale factor");
  deg->add_option("--out-lr", deg_out_lr, "LR output path")->required();
  deg->add_option("--out-up", deg_out_up, "bicubic-baseline output path");

  // hallucinate
  std::string hal_lr, hal_out;
  std::vector<std::string> hal_candidates;
  int hal_scale = 4;
  cvxsr::SolverConfig hal_cfg;
  CLI::App *hal = app.add_subcommand(
      "hallucinate",
      "fuse an LR input with pre-aligned HR candidate images");
  hal->add_option("--lr", hal_lr, "LR input image")->required();
  hal->add_option("--candidates", hal_candidates,
                  "comma-separated, pre-aligned HR candidates (order defines "
                  "indexing)")
      ->required()
      ->delimiter(',');
  hal->add_option("--scale", hal_scale, "integer scale factor");
  hal->add_option("--out", hal_out, "output image path")->required();
  hal->add_option("--lambda", hal_cfg.lambda, "reconstruction weight");
  hal->add_option("--gamma", hal_cfg.gamma, "hallucination weight");
  hal->add_option("--iters", hal_cfg.max_outer_iters, "outer iteration cap");
  hal->add_option("--tol", hal_cfg.rel_change_tol, "relative-change stop");
  uint64_t hal_seed = 0;
  hal->add_option("--seed", hal_seed, "seed for the operator norm estimate");

  // evaluate
  std::string eva_a, eva_b;
  CLI::App *eva =
      app.add_subcommand("evaluate", "PSNR and SSIM of an image pair");
  eva->add_option("--a", eva_a, "first image")->required();
  eva->add_option("--b", eva_b, "second image")->required();

  // oracle-check
  int orc_size = 8, orc_candidates = 2, orc_scale = 2;
  double orc_lambda = 10.0, orc_gamma = 0.5;
  cvxsr::OracleConfig orc_cfg;
  uint64_t orc_seed = 0;
  CLI::App *orc = app.add_subcommand(
      "oracle-check", "compare the primal-dual solver against the slow "
                      "smoothed-descent oracle on a tiny instance (exits 2 "
                      "if the energies differ by more than 0.5%)");
  orc->add_option("--size", orc_size, "HR size (max 16)");
  orc->add_option("--candidates", orc_candidates, "candidate count");
  orc->add_option("--scale", orc_scale, "integer scale factor");
  orc->add_option("--lambda", orc_lambda,
                  "reconstruction weight (tiny-instance scaled)");
  orc->add_option("--gamma", orc_gamma,
                  "hallucination weight (tiny-instance scaled)");
  orc->add_option("--eps", orc_cfg.huber_eps, "oracle smoothing");
  orc->add_option("--oracle-iters", orc_cfg.iters, "oracle descent steps");
  orc->add_option("--seed", orc_seed, "instance seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 1;
  }

  try {
    if (deg->parsed())
      return run_degrade(deg_hr, deg_scale, deg_out_lr, deg_out_up);
    if (hal->parsed()) {
      hal_cfg.seed = hal_seed;
      return run_hallucinate(hal_lr, hal_candidates, hal_scale, hal_out,
                             hal_cfg);
    }
    if (eva->parsed()) return run_evaluate(eva_a, eva_b);
    if (orc->parsed())
      return run_oracle_check(orc_size, orc_candidates, orc_scale, orc_lambda,
                              orc_gamma, orc_cfg, orc_seed);
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
