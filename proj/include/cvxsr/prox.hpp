#ifndef CVXSR_PROX_HPP
#define CVXSR_PROX_HPP

#include <vector>

#include "cvxsr/cg.hpp"
#include "cvxsr/linops.hpp"
#include "cvxsr/plane.hpp"

namespace cvxsr {

/// Stacked primal state x = (u, w_1..w_n): the HR estimate plus one
/// auxiliary HR-sized plane per candidate.
struct PrimalVars {
  Plane u;
  std::vector<Plane> w;
};

/// Stacked dual state y = (p, r_1..r_n): the TV dual field plus one
/// HR-sized plane per candidate.
struct DualVars {
  VectorField p;
  std::vector<Plane> r;
};

PrimalVars zeros_like(const PrimalVars &x);
DualVars zeros_like(const DualVars &y);

double dot(const PrimalVars &a, const PrimalVars &b);
double dot(const DualVars &a, const DualVars &b);
double norm2(const PrimalVars &a);
double norm2(const DualVars &a);
void scale_in_place(PrimalVars &x, double s);
void scale_in_place(DualVars &y, double s);

/// Resolvent of sigma * F^*: projects every pixel of p onto the unit
/// Euclidean ball and shifts each r_i by the precomputed H g_i. The affine
/// shift is r_i <- r_i - sigma * Hg_i, the direction that drives the dual
/// ascent toward w_i = H(u - g_i).
void prox_Fstar_in_place(DualVars &y, double sigma,
                         const std::vector<Plane> &Hg);
DualVars prox_Fstar(const DualVars &y_tilde, double sigma,
                    const std::vector<Plane> &Hg);

/// Elementwise soft-threshold with threshold t >= 0.
double soft_threshold(double v, double t);

/// Resolvent of tau * G. The w_i are soft-thresholded at tau*gamma; u solves
/// the SPD system (I + 2 lambda tau A^T A) u = 2 lambda tau A^T f + u_tilde
/// by conjugate gradient, warm-started at u_warm.
std::pair<PrimalVars, CgReport>
prox_G(const PrimalVars &x_tilde, double tau, double lambda, double gamma,
       const Plane &f, const DegradationModel &model, const CgConfig &cg_cfg,
       const Plane &u_warm);

} // namespace cvxsr

#endif
