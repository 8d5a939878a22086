#ifndef CVXSR_ORACLE_HPP
#define CVXSR_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "cvxsr/linops.hpp"
#include "cvxsr/plane.hpp"

namespace cvxsr {

struct OracleConfig {
  double huber_eps = 1e-4; // smoothing of the TV and L1 terms
  double step = 0.0;       // <= 0 derives 1/L from the Lipschitz bound
  long iters = 1000000;
};

/// Smoothed objective: every absolute value |v| is replaced by
/// sqrt(v^2 + eps^2) - eps (and the TV magnitude likewise).
double oracle_energy(const Plane &u, const Plane &f,
                     const std::vector<Plane> &g, const DegradationModel &model,
                     double lambda, double gamma, double huber_eps);

/// Analytic gradient of the smoothed objective, for finite-difference checks.
Plane oracle_gradient(const Plane &u, const Plane &f,
                      const std::vector<Plane> &g,
                      const DegradationModel &model, double lambda,
                      double gamma, double huber_eps);

/// Fixed-step gradient descent on the smoothed objective, started from the
/// bicubic upsampling of f. Deliberately slow and simple; limited to HR
/// sizes of at most 16x16. Throws if the smoothed energy increases ten
/// consecutive steps. When energy_trace is given it receives the smoothed
/// energy after every step.
Plane oracle_solve(const Plane &f, const std::vector<Plane> &g,
                   const DegradationModel &model, double lambda, double gamma,
                   const OracleConfig &cfg,
                   std::vector<double> *energy_trace = nullptr);

/// One tiny seeded instance: a smooth random HR scene with a step edge,
/// its degraded LR input, and shifted noisy copies as candidates.
struct TinyInstance {
  Plane hr;
  Plane f;
  std::vector<Plane> g;
  DegradationModel model;
};
TinyInstance make_tiny_instance(int size, int n_candidates, int scale,
                                uint64_t seed);

/// Runs the primal-dual solver and the oracle on the same tiny instance and
/// compares the objective values of the two results.
struct OracleCheckResult {
  double pd_energy = 0.0;
  double oracle_energy = 0.0;
  double rel_gap = 0.0; // |pd - oracle| / oracle
};
OracleCheckResult oracle_check(int size, int n_candidates, int scale,
                               double lambda, double gamma,
                               const OracleConfig &cfg, uint64_t seed);

} // namespace cvxsr

#endif
