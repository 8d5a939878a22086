#ifndef CVXSR_PD_SOLVER_HPP
#define CVXSR_PD_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "cvxsr/cg.hpp"
#include "cvxsr/linops.hpp"
#include "cvxsr/plane.hpp"
#include "cvxsr/prox.hpp"

namespace cvxsr {

struct SolverConfig {
  double lambda = 5e4;          // reconstruction weight
  double gamma = 20.0;          // hallucination weight
  double theta = 1.0;           // dual extrapolation factor, in [0,1]
  int max_outer_iters = 400;
  double rel_change_tol = 1e-5; // on ||u_next - u|| / ||u||
  int power_iters = 60;         // operator norm estimation budget
  uint64_t seed = 0;
  CgConfig cg;
};

struct SolveDiagnostics {
  std::vector<double> energy_trace;     // objective value per iteration
  std::vector<double> rel_change_trace; // ||u_next - u|| / ||u|| per iteration
  int iterations_run = 0;
  int cg_total_iters = 0;
  double op_norm = 0.0; // estimated ||K||
  double tau = 0.0;
  double sigma = 0.0;
};

/// Objective value: sum of per-pixel gradient magnitudes (isotropic TV)
/// + lambda ||Au - f||_2^2 + gamma sum_i ||H(u - g_i)||_1.
double energy(const Plane &u, const Plane &f, const std::vector<Plane> &g,
              const DegradationModel &model, double lambda, double gamma);

// Stacked operator K = (grad; H -I; H -I; ...) and its adjoint:
//   apply_K:  p-slot <- grad u,            r_i-slot <- H u - w_i
//   apply_Kt: u-slot <- -div p + sum H^T r_i,  w_i-slot <- -r_i
DualVars apply_K(const PrimalVars &x, const GaussianKernel &k);
PrimalVars apply_Kt(const DualVars &y, const GaussianKernel &k);

struct SolveResult {
  Plane u;
  SolveDiagnostics diagnostics;
};

/// First-order primal-dual loop with dual extrapolation. Starts from the
/// bicubic upsampling of f with w_i = H(u0 - g_i) and y = 0; per iteration
///   x <- prox_G(x - tau K^T ybar)
///   y_next <- prox_F*(y + sigma K x)
///   ybar <- y_next + theta (y_next - y)
/// with tau = sigma = 1 / (1.01 L) from a seeded power-method estimate of
/// L = ||K||, so tau sigma L^2 < 1 holds strictly (checked at runtime).
/// Stops at max_outer_iters or when the relative change of u drops below
/// rel_change_tol.
SolveResult solve(const Plane &f, const std::vector<Plane> &g,
                  const DegradationModel &model, const SolverConfig &cfg);

} // namespace cvxsr

#endif
