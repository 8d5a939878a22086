#include "cvxsr/pd_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "cvxsr/resample.hpp"

namespace cvxsr {

namespace {

void check_instance(const Plane &f, const std::vector<Plane> &g,
                    const DegradationModel &model) {
  if (f.width != model.lr_width || f.height != model.lr_height)
    throw std::invalid_argument("input is not LR-sized for the model");
  for (const Plane &gi : g)
    if (gi.width != model.hr_width || gi.height != model.hr_height)
      throw std::invalid_argument("candidate is not HR-sized for the model");
}

double tv_term(const VectorField &grad_u) {
  double acc = 0.0;
  for (size_t i = 0; i < grad_u.px.size(); ++i) {
    const double gx = grad_u.px.data[i];
    const double gy = grad_u.py.data[i];
    acc += std::sqrt(gx * gx + gy * gy);
  }
  return acc;
}

// Same objective as energy(), with H u and H g_i precomputed by the caller.
double energy_precomp(const Plane &u, const VectorField &grad_u,
                      const Plane &Au, const Plane &f, const Plane &Hu,
                      const std::vector<Plane> &Hg, double lambda,
                      double gamma) {
  (void)u;
  double data = 0.0;
  for (size_t i = 0; i < f.size(); ++i) {
    const double d = Au.data[i] - f.data[i];
    data += d * d;
  }
  double hall = 0.0;
  for (const Plane &Hgi : Hg)
    for (size_t i = 0; i < Hu.size(); ++i)
      hall += std::abs(Hu.data[i] - Hgi.data[i]);
  return tv_term(grad_u) + lambda * data + gamma * hall;
}

} // namespace

double energy(const Plane &u, const Plane &f, const std::vector<Plane> &g,
              const DegradationModel &model, double lambda, double gamma) {
  check_instance(f, g, model);
  if (u.width != model.hr_width || u.height != model.hr_height)
    throw std::invalid_argument("estimate is not HR-sized for the model");

  const double tv = tv_term(grad(u));

  const Plane Au = apply_A(u, model);
  double data = 0.0;
  for (size_t i = 0; i < f.size(); ++i) {
    const double d = Au.data[i] - f.data[i];
    data += d * d;
  }

  double hall = 0.0;
  for (const Plane &gi : g) hall += sum_abs(highpass(sub(u, gi), model.kernel));

  return tv + lambda * data + gamma * hall;
}

DualVars apply_K(const PrimalVars &x, const GaussianKernel &k) {
  DualVars y;
  y.p = grad(x.u);
  const Plane Hu = highpass(x.u, k);
  y.r.reserve(x.w.size());
  for (const Plane &wi : x.w) y.r.push_back(sub(Hu, wi));
  return y;
}

PrimalVars apply_Kt(const DualVars &y, const GaussianKernel &k) {
  PrimalVars x;
  x.u = div(y.p);
  scale_in_place(x.u, -1.0);
  if (!y.r.empty()) {
    Plane rsum = y.r[0];
    for (size_t i = 1; i < y.r.size(); ++i) axpy(rsum, 1.0, y.r[i]);
    axpy(x.u, 1.0, highpass_adjoint(rsum, k));
  }
  x.w.reserve(y.r.size());
  for (const Plane &ri : y.r) x.w.push_back(scaled(ri, -1.0));
  return x;
}

SolveResult solve(const Plane &f, const std::vector<Plane> &g,
                  const DegradationModel &model, const SolverConfig &cfg) {
  if (g.empty())
    throw std::invalid_argument("solve needs at least one candidate");
  check_instance(f, g, model);
  if (cfg.theta < 0.0 || cfg.theta > 1.0)
    throw std::invalid_argument("theta must lie in [0,1]");
  if (cfg.max_outer_iters < 1)
    throw std::invalid_argument("max_outer_iters must be at least 1");

  const size_t n = g.size();
  const GaussianKernel &k = model.kernel;

  std::vector<Plane> Hg;
  Hg.reserve(n);
  for (const Plane &gi : g) Hg.push_back(highpass(gi, k));

  PrimalVars x;
  x.u = bicubic_resize(f, model.hr_width, model.hr_height);
  x.w.reserve(n);
  for (const Plane &gi : g) x.w.push_back(highpass(sub(x.u, gi), k));

  DualVars y;
  y.p = VectorField(model.hr_width, model.hr_height);
  y.r.assign(n, Plane(model.hr_width, model.hr_height));
  DualVars ybar = y;

  auto apply_KtK = [&](const PrimalVars &v) { return apply_Kt(apply_K(v, k), k); };
  const double L =
      estimate_op_norm(apply_KtK, x, cfg.power_iters, cfg.seed);
  if (L <= 0.0)
    throw std::runtime_error("operator norm estimate is not positive");
  const double tau = 1.0 / (1.01 * L);
  const double sigma = tau;
  if (!(tau * sigma * L * L < 1.0))
    throw std::logic_error("step sizes violate tau*sigma*L^2 < 1");

  SolveDiagnostics diag;
  diag.op_norm = L;
  diag.tau = tau;
  diag.sigma = sigma;
  diag.energy_trace.reserve(cfg.max_outer_iters);
  diag.rel_change_trace.reserve(cfg.max_outer_iters);

  Plane eng_s1(model.hr_width, model.hr_height);
  Plane eng_s2(model.hr_width, model.hr_height);
  Plane eng_lr(model.lr_width, model.lr_height);
  Plane eng_hu(model.hr_width, model.hr_height);
  VectorField eng_grad(model.hr_width, model.hr_height);

  for (int it = 0; it < cfg.max_outer_iters; ++it) {
    // Primal descent + resolvent of G, warm-starting CG at the previous u.
    PrimalVars x_tilde = apply_Kt(ybar, k);
    scale_in_place(x_tilde, -tau);
    axpy(x_tilde.u, 1.0, x.u);
    for (size_t i = 0; i < n; ++i) axpy(x_tilde.w[i], 1.0, x.w[i]);

    auto [x_next, cg_report] =
        prox_G(x_tilde, tau, cfg.lambda, cfg.gamma, f, model, cfg.cg, x.u);
    diag.cg_total_iters += cg_report.iterations_used;

    // Dual ascent + resolvent of F*, then extrapolation.
    DualVars y_next = apply_K(x_next, k);
    scale_in_place(y_next, sigma);
    axpy(y_next.p.px, 1.0, y.p.px);
    axpy(y_next.p.py, 1.0, y.p.py);
    for (size_t i = 0; i < n; ++i) axpy(y_next.r[i], 1.0, y.r[i]);
    prox_Fstar_in_place(y_next, sigma, Hg);

    ybar = y_next;
    scale_in_place(ybar, 1.0 + cfg.theta);
    axpy(ybar.p.px, -cfg.theta, y.p.px);
    axpy(ybar.p.py, -cfg.theta, y.p.py);
    for (size_t i = 0; i < n; ++i) axpy(ybar.r[i], -cfg.theta, y.r[i]);

    const double denom = norm2(x.u);
    double change = 0.0;
    for (size_t i = 0; i < x.u.size(); ++i) {
      const double d = x_next.u.data[i] - x.u.data[i];
      change += d * d;
    }
    change = std::sqrt(change);
    const double rel_change = denom > 0.0 ? change / denom : change;

    x = std::move(x_next);
    y = std::move(y_next);

    grad_into(x.u, eng_grad);
    apply_A_into(x.u, model, eng_s1, eng_s2, eng_lr);
    highpass_into(x.u, k, eng_s1, eng_s2, eng_hu);
    diag.energy_trace.push_back(energy_precomp(
        x.u, eng_grad, eng_lr, f, eng_hu, Hg, cfg.lambda, cfg.gamma));
    diag.rel_change_trace.push_back(rel_change);
    diag.iterations_run = it + 1;

    if (!all_finite(x.u))
      throw std::runtime_error("solver produced non-finite values");
    if (rel_change <= cfg.rel_change_tol) break;
  }

  SolveResult result;
  result.u = std::move(x.u);
  result.diagnostics = std::move(diag);
  return result;
}

} // namespace cvxsr
