#include "cvxsr/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "cvxsr/pd_solver.hpp"
#include "cvxsr/resample.hpp"
#include "cvxsr/rng.hpp"

namespace cvxsr {

namespace {

double huber(double v, double eps) {
  return std::sqrt(v * v + eps * eps) - eps;
}

void check_oracle_instance(const Plane &f, const std::vector<Plane> &g,
                           const DegradationModel &model) {
  if (model.hr_width > 16 || model.hr_height > 16)
    throw std::invalid_argument("oracle is limited to HR sizes <= 16x16");
  if (f.width != model.lr_width || f.height != model.lr_height)
    throw std::invalid_argument("input is not LR-sized for the model");
  for (const Plane &gi : g)
    if (gi.width != model.hr_width || gi.height != model.hr_height)
      throw std::invalid_argument("candidate is not HR-sized for the model");
}

// Work buffers reused across the descent loop.
struct OracleWorkspace {
  VectorField gf, psi_tv;
  Plane s1, s2, hu, psi_sum, contrib, lr;
  std::vector<Plane> Hg;

  OracleWorkspace(const DegradationModel &m, const std::vector<Plane> &g)
      : gf(m.hr_width, m.hr_height), psi_tv(m.hr_width, m.hr_height),
        s1(m.hr_width, m.hr_height), s2(m.hr_width, m.hr_height),
        hu(m.hr_width, m.hr_height), psi_sum(m.hr_width, m.hr_height),
        contrib(m.hr_width, m.hr_height), lr(m.lr_width, m.lr_height) {
    Hg.reserve(g.size());
    for (const Plane &gi : g) Hg.push_back(highpass(gi, m.kernel));
  }
};

// Computes the smoothed energy and, when grad_out is non-null, its gradient
// in one pass over the shared intermediates.
double energy_and_gradient(const Plane &u, const Plane &f,
                           const DegradationModel &model, double lambda,
                           double gamma, double eps, OracleWorkspace &ws,
                           Plane *grad_out) {
  const double eps2 = eps * eps;

  grad_into(u, ws.gf);
  double tv = 0.0;
  for (size_t i = 0; i < ws.gf.px.size(); ++i) {
    const double gx = ws.gf.px.data[i];
    const double gy = ws.gf.py.data[i];
    const double mag = std::sqrt(gx * gx + gy * gy + eps2);
    tv += mag - eps;
    if (grad_out) {
      ws.psi_tv.px.data[i] = gx / mag;
      ws.psi_tv.py.data[i] = gy / mag;
    }
  }

  apply_A_into(u, model, ws.s1, ws.s2, ws.lr);
  double data = 0.0;
  for (size_t i = 0; i < ws.lr.size(); ++i) {
    ws.lr.data[i] -= f.data[i];
    data += ws.lr.data[i] * ws.lr.data[i];
  }

  highpass_into(u, model.kernel, ws.s1, ws.s2, ws.hu);
  double hall = 0.0;
  fill(ws.psi_sum, 0.0);
  for (const Plane &Hgi : ws.Hg) {
    for (size_t i = 0; i < ws.hu.size(); ++i) {
      const double z = ws.hu.data[i] - Hgi.data[i];
      const double mag = std::sqrt(z * z + eps2);
      hall += mag - eps;
      if (grad_out) ws.psi_sum.data[i] += z / mag;
    }
  }

  if (grad_out) {
    // -div(psi_tv) + 2 lambda A^T (Au - f) + gamma H^T (sum_i psi_i)
    div_into(ws.psi_tv, *grad_out);
    scale_in_place(*grad_out, -1.0);
    apply_At_into(ws.lr, model, ws.s1, ws.s2, ws.contrib);
    axpy(*grad_out, 2.0 * lambda, ws.contrib);
    highpass_adjoint_into(ws.psi_sum, model.kernel, ws.s1, ws.s2, ws.contrib);
    axpy(*grad_out, gamma, ws.contrib);
  }

  return tv + lambda * data + gamma * hall;
}

// Largest singular value of a plane-space map, power iteration.
template <typename ApplyTtT>
double plane_op_norm(ApplyTtT &&apply, int w, int h, int iters) {
  Rng rng(0x9d2c5680u);
  Plane v(w, h);
  for (double &x : v.data) x = rng.uniform(-1.0, 1.0);
  double n = norm2(v);
  scale_in_place(v, 1.0 / n);
  double rayleigh = 0.0;
  for (int i = 0; i < iters; ++i) {
    Plane z = apply(v);
    rayleigh = dot(v, z);
    const double nz = norm2(z);
    if (nz == 0.0) break;
    scale_in_place(z, 1.0 / nz);
    v = std::move(z);
  }
  return std::sqrt(rayleigh < 0.0 ? 0.0 : rayleigh);
}

double lipschitz_step(const DegradationModel &model, double lambda,
                      double gamma, size_t n, double eps) {
  const double norm_A = plane_op_norm(
      [&](const Plane &v) { return apply_At(apply_A(v, model), model); },
      model.hr_width, model.hr_height, 60);
  const double norm_H = plane_op_norm(
      [&](const Plane &v) {
        return highpass_adjoint(highpass(v, model.kernel), model.kernel);
      },
      model.hr_width, model.hr_height, 60);
  // ||grad||^2 <= 8; the 1.05 margins absorb power-iteration slack.
  const double lip = 8.0 / eps + 2.0 * lambda * norm_A * norm_A * 1.05 +
                     static_cast<double>(n) * gamma * norm_H * norm_H * 1.05 / eps;
  return 1.0 / lip;
}

} // namespace

double oracle_energy(const Plane &u, const Plane &f,
                     const std::vector<Plane> &g, const DegradationModel &model,
                     double lambda, double gamma, double huber_eps) {
  check_oracle_instance(f, g, model);
  OracleWorkspace ws(model, g);
  return energy_and_gradient(u, f, model, lambda, gamma, huber_eps, ws,
                             nullptr);
}

Plane oracle_gradient(const Plane &u, const Plane &f,
                      const std::vector<Plane> &g,
                      const DegradationModel &model, double lambda,
                      double gamma, double huber_eps) {
  check_oracle_instance(f, g, model);
  OracleWorkspace ws(model, g);
  Plane grad_out(model.hr_width, model.hr_height);
  energy_and_gradient(u, f, model, lambda, gamma, huber_eps, ws, &grad_out);
  return grad_out;
}

Plane oracle_solve(const Plane &f, const std::vector<Plane> &g,
                   const DegradationModel &model, double lambda, double gamma,
                   const OracleConfig &cfg, std::vector<double> *energy_trace) {
  check_oracle_instance(f, g, model);
  if (cfg.huber_eps <= 0.0)
    throw std::invalid_argument("huber_eps must be positive");
  if (cfg.iters < 1)
    throw std::invalid_argument("iters must be at least 1");

  const double step = cfg.step > 0.0
                          ? cfg.step
                          : lipschitz_step(model, lambda, gamma, g.size(),
                                           cfg.huber_eps);

  Plane u = bicubic_resize(f, model.hr_width, model.hr_height);
  OracleWorkspace ws(model, g);
  Plane gradient(model.hr_width, model.hr_height);

  double prev_energy = energy_and_gradient(u, f, model, lambda, gamma,
                                           cfg.huber_eps, ws, nullptr);
  int consecutive_increases = 0;
  for (long it = 0; it < cfg.iters; ++it) {
    const double e = energy_and_gradient(u, f, model, lambda, gamma,
                                         cfg.huber_eps, ws, &gradient);
    if (e > prev_energy) {
      if (++consecutive_increases >= 10)
        throw std::runtime_error("oracle descent diverged");
    } else {
      consecutive_increases = 0;
    }
    prev_energy = e;
    if (energy_trace) energy_trace->push_back(e);
    axpy(u, -step, gradient);
  }
  return u;
}

TinyInstance make_tiny_instance(int size, int n_candidates, int scale,
                                uint64_t seed) {
  if (size % scale != 0)
    throw std::invalid_argument("instance size must be divisible by the scale");
  Rng rng(seed);

  // Smooth random scene with one step edge so the TV term has real content.
  const int coarse = std::max(2, size / 2);
  Plane noise(coarse, coarse);
  for (double &v : noise.data) v = rng.uniform(0.15, 0.85);
  Plane hr = bicubic_resize(noise, size, size);
  const int edge_col = size / 3 + rng.uniform_int(0, std::max(1, size / 3) - 1);
  for (int y = 0; y < size; ++y)
    for (int x = edge_col; x < size; ++x) hr.at(x, y) += 0.3;

  TinyInstance inst;
  inst.model = make_model(size, size, scale);
  inst.hr = hr;
  inst.f = apply_A(hr, inst.model);

  for (int i = 0; i < n_candidates; ++i) {
    const int dx = rng.uniform_int(-1, 1);
    const int dy = rng.uniform_int(-1, 1);
    Plane gi(size, size);
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) {
        const int sx = std::min(size - 1, std::max(0, x - dx));
        const int sy = std::min(size - 1, std::max(0, y - dy));
        gi.at(x, y) = hr.at(sx, sy) + 0.05 * rng.gaussian();
      }
    inst.g.push_back(std::move(gi));
  }
  return inst;
}

OracleCheckResult oracle_check(int size, int n_candidates, int scale,
                               double lambda, double gamma,
                               const OracleConfig &cfg, uint64_t seed) {
  const TinyInstance inst = make_tiny_instance(size, n_candidates, scale, seed);

  SolverConfig pd_cfg;
  pd_cfg.lambda = lambda;
  pd_cfg.gamma = gamma;
  pd_cfg.max_outer_iters = 4000;
  pd_cfg.rel_change_tol = 1e-13;
  pd_cfg.power_iters = 100;
  pd_cfg.seed = seed;
  pd_cfg.cg = CgConfig{200, 1e-12};

  const SolveResult pd = solve(inst.f, inst.g, inst.model, pd_cfg);
  const Plane u_oracle =
      oracle_solve(inst.f, inst.g, inst.model, lambda, gamma, cfg);

  OracleCheckResult result;
  result.pd_energy = energy(pd.u, inst.f, inst.g, inst.model, lambda, gamma);
  result.oracle_energy =
      energy(u_oracle, inst.f, inst.g, inst.model, lambda, gamma);
  result.rel_gap = std::abs(result.pd_energy - result.oracle_energy) /
                   result.oracle_energy;
  return result;
}

} // namespace cvxsr
