#include "cvxsr/cg.hpp"

#include <cmath>
#include <stdexcept>

namespace cvxsr {

std::pair<Plane, CgReport>
cg_solve(const std::function<void(const Plane &, Plane &)> &apply_M,
         const Plane &b, const Plane &x0, const CgConfig &cfg) {
  if (!b.same_size(x0))
    throw std::invalid_argument("cg_solve: b and x0 sizes differ");
  if (cfg.max_iters < 1 || cfg.rel_tol <= 0.0 || cfg.rel_tol >= 1.0)
    throw std::invalid_argument("cg_solve: invalid configuration");

  Plane x = x0;
  Plane r(b.width, b.height), q(b.width, b.height);

  apply_M(x, r);
  for (size_t i = 0; i < r.size(); ++i) r.data[i] = b.data[i] - r.data[i];

  double rr = dot(r, r);
  const double r0 = std::sqrt(rr);
  if (!std::isfinite(r0))
    throw std::runtime_error("cg_solve: non-finite initial residual");

  CgReport report;
  if (r0 == 0.0) { // warm start already exact
    report.converged = true;
    return {std::move(x), report};
  }

  Plane p = r;
  int it = 0;
  while (it < cfg.max_iters) {
    ++it;
    apply_M(p, q);
    const double pq = dot(p, q);
    if (!std::isfinite(pq) || pq <= 0.0)
      throw std::runtime_error("cg_solve: curvature is non-positive or NaN");
    const double alpha = rr / pq;
    axpy(x, alpha, p);
    axpy(r, -alpha, q);
    const double rr_new = dot(r, r);
    if (!std::isfinite(rr_new))
      throw std::runtime_error("cg_solve: non-finite residual");
    if (std::sqrt(rr_new) <= cfg.rel_tol * r0) {
      rr = rr_new;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (size_t i = 0; i < p.size(); ++i)
      p.data[i] = r.data[i] + beta * p.data[i];
  }

  report.iterations_used = it;
  report.final_rel_residual = std::sqrt(rr) / r0;
  report.converged = report.final_rel_residual <= cfg.rel_tol;
  return {std::move(x), report};
}

} // namespace cvxsr
