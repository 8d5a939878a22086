#include "cvxsr/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace cvxsr {

PrimalVars zeros_like(const PrimalVars &x) {
  PrimalVars z;
  z.u = Plane(x.u.width, x.u.height);
  z.w.assign(x.w.size(), Plane(x.u.width, x.u.height));
  return z;
}

DualVars zeros_like(const DualVars &y) {
  DualVars z;
  z.p = VectorField(y.p.px.width, y.p.px.height);
  z.r.assign(y.r.size(), Plane(y.p.px.width, y.p.px.height));
  return z;
}

double dot(const PrimalVars &a, const PrimalVars &b) {
  assert(a.w.size() == b.w.size());
  double acc = dot(a.u, b.u);
  for (size_t i = 0; i < a.w.size(); ++i) acc += dot(a.w[i], b.w[i]);
  return acc;
}

double dot(const DualVars &a, const DualVars &b) {
  assert(a.r.size() == b.r.size());
  double acc = dot(a.p.px, b.p.px) + dot(a.p.py, b.p.py);
  for (size_t i = 0; i < a.r.size(); ++i) acc += dot(a.r[i], b.r[i]);
  return acc;
}

double norm2(const PrimalVars &a) { return std::sqrt(dot(a, a)); }
double norm2(const DualVars &a) { return std::sqrt(dot(a, a)); }

void scale_in_place(PrimalVars &x, double s) {
  scale_in_place(x.u, s);
  for (Plane &w : x.w) scale_in_place(w, s);
}

void scale_in_place(DualVars &y, double s) {
  scale_in_place(y.p.px, s);
  scale_in_place(y.p.py, s);
  for (Plane &r : y.r) scale_in_place(r, s);
}

void prox_Fstar_in_place(DualVars &y, double sigma,
                         const std::vector<Plane> &Hg) {
  if (sigma <= 0.0)
    throw std::invalid_argument("prox_Fstar: sigma must be positive");
  if (Hg.size() != y.r.size())
    throw std::invalid_argument("prox_Fstar: Hg count does not match duals");

  // Pointwise Euclidean projection of p onto the unit ball.
  for (size_t i = 0; i < y.p.px.size(); ++i) {
    double &px = y.p.px.data[i];
    double &py = y.p.py.data[i];
    const double mag = std::sqrt(px * px + py * py);
    if (mag > 1.0) {
      px /= mag;
      py /= mag;
    }
  }
  for (size_t i = 0; i < y.r.size(); ++i) axpy(y.r[i], -sigma, Hg[i]);
}

DualVars prox_Fstar(const DualVars &y_tilde, double sigma,
                    const std::vector<Plane> &Hg) {
  DualVars y = y_tilde;
  prox_Fstar_in_place(y, sigma, Hg);
  return y;
}

double soft_threshold(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

std::pair<PrimalVars, CgReport>
prox_G(const PrimalVars &x_tilde, double tau, double lambda, double gamma,
       const Plane &f, const DegradationModel &model, const CgConfig &cg_cfg,
       const Plane &u_warm) {
  if (tau <= 0.0 || lambda <= 0.0 || gamma <= 0.0)
    throw std::invalid_argument("prox_G: tau, lambda, gamma must be positive");
  if (f.width != model.lr_width || f.height != model.lr_height)
    throw std::invalid_argument("prox_G: f is not LR-sized for the model");
  if (!u_warm.same_size(x_tilde.u))
    throw std::invalid_argument("prox_G: u_warm is not HR-sized");

  PrimalVars x;
  x.w.reserve(x_tilde.w.size());
  const double threshold = tau * gamma;
  for (const Plane &wt : x_tilde.w) {
    Plane w(wt.width, wt.height);
    for (size_t i = 0; i < wt.size(); ++i)
      w.data[i] = soft_threshold(wt.data[i], threshold);
    x.w.push_back(std::move(w));
  }

  // (I + 2 lambda tau A^T A) u = 2 lambda tau A^T f + u_tilde
  const double c = 2.0 * lambda * tau;
  Plane s1(model.hr_width, model.hr_height), s2(model.hr_width, model.hr_height);
  Plane lr(model.lr_width, model.lr_height);
  Plane At_lr(model.hr_width, model.hr_height);

  auto apply_M = [&](const Plane &v, Plane &out) {
    apply_A_into(v, model, s1, s2, lr);
    apply_At_into(lr, model, s1, s2, At_lr);
    for (size_t i = 0; i < v.size(); ++i)
      out.data[i] = v.data[i] + c * At_lr.data[i];
  };

  Plane b = apply_At(f, model);
  scale_in_place(b, c);
  for (size_t i = 0; i < b.size(); ++i) b.data[i] += x_tilde.u.data[i];

  auto [u, report] = cg_solve(apply_M, b, u_warm, cg_cfg);
  x.u = std::move(u);
  return {std::move(x), report};
}

} // namespace cvxsr
