#ifndef CVXSR_CG_HPP
#define CVXSR_CG_HPP

#include <functional>

#include "cvxsr/plane.hpp"

namespace cvxsr {

struct CgConfig {
  int max_iters = 30;
  double rel_tol = 1e-6; // residual norm relative to the initial residual
};

struct CgReport {
  int iterations_used = 0;
  double final_rel_residual = 0.0;
  bool converged = false;
};

/// Conjugate gradient for a symmetric positive-definite map M on planes.
/// x0 is the warm start; returns x with ||Mx - b|| <= rel_tol * ||Mx0 - b||
/// or the iterate at the iteration cap (reported via the CgReport, not an
/// error). Throws std::runtime_error if non-finite values appear, which
/// signals a non-SPD or badly scaled system.
std::pair<Plane, CgReport>
cg_solve(const std::function<void(const Plane &, Plane &)> &apply_M,
         const Plane &b, const Plane &x0, const CgConfig &cfg);

} // namespace cvxsr

#endif
