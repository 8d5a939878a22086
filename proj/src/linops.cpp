#include "cvxsr/linops.hpp"

#include <cmath>
#include <stdexcept>

#include "cvxsr/prox.hpp"
#include "cvxsr/rng.hpp"

namespace cvxsr {

GaussianKernel make_gaussian(double sigma, int radius) {
  if (sigma <= 0.0 || radius < 1)
    throw std::invalid_argument("gaussian kernel needs sigma > 0, radius >= 1");
  GaussianKernel k;
  k.sigma = sigma;
  k.radius = radius;
  k.taps.resize(2 * radius + 1);
  double sum = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    const double v = std::exp(-(t * t) / (2.0 * sigma * sigma));
    k.taps[t + radius] = v;
    sum += v;
  }
  for (double &v : k.taps) v /= sum;
  return k;
}

GaussianKernel make_kernel(int scale) {
  if (scale < 2)
    throw std::invalid_argument("scale factor must be at least 2");
  const double sigma = 0.25 * std::sqrt(static_cast<double>(scale) * scale - 1.0);
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  return make_gaussian(sigma, radius);
}

DegradationModel make_model(int hr_width, int hr_height, int scale) {
  if (hr_width % scale != 0 || hr_height % scale != 0)
    throw std::invalid_argument("HR dimensions must be divisible by the scale");
  DegradationModel m;
  m.scale = scale;
  m.kernel = make_kernel(scale);
  m.hr_width = hr_width;
  m.hr_height = hr_height;
  m.lr_width = hr_width / scale;
  m.lr_height = hr_height / scale;
  return m;
}

void grad_into(const Plane &u, VectorField &out) {
  assert(u.same_size(out.px) && u.same_size(out.py));
  const int w = u.width, h = u.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.px.at(x, y) = x + 1 < w ? u.at(x + 1, y) - u.at(x, y) : 0.0;
      out.py.at(x, y) = y + 1 < h ? u.at(x, y + 1) - u.at(x, y) : 0.0;
    }
  }
}

VectorField grad(const Plane &u) {
  VectorField out(u.width, u.height);
  grad_into(u, out);
  return out;
}

void div_into(const VectorField &p, Plane &out) {
  assert(p.px.same_size(out));
  const int w = out.width, h = out.height;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      if (x + 1 < w) v += p.px.at(x, y);
      if (x > 0) v -= p.px.at(x - 1, y);
      if (y + 1 < h) v += p.py.at(x, y);
      if (y > 0) v -= p.py.at(x, y - 1);
      out.at(x, y) = v;
    }
  }
}

Plane div(const VectorField &p) {
  Plane out(p.px.width, p.px.height);
  div_into(p, out);
  return out;
}

namespace {

inline int clamp_idx(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

// out(x,y) = sum_o taps[o+R] * in(clamp(x+o), y)
void conv_rows(const Plane &in, const GaussianKernel &k, Plane &out) {
  const int w = in.width, h = in.height, R = k.radius;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int o = -R; o <= R; ++o)
        acc += k.taps[o + R] * in.at(clamp_idx(x + o, w), y);
      out.at(x, y) = acc;
    }
  }
}

void conv_cols(const Plane &in, const GaussianKernel &k, Plane &out) {
  const int w = in.width, h = in.height, R = k.radius;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int o = -R; o <= R; ++o)
        acc += k.taps[o + R] * in.at(x, clamp_idx(y + o, h));
      out.at(x, y) = acc;
    }
  }
}

// Scatter transpose of conv_rows: out(clamp(x+o), y) += taps[o+R] * in(x, y)
void conv_rows_adjoint(const Plane &in, const GaussianKernel &k, Plane &out) {
  const int w = in.width, h = in.height, R = k.radius;
  fill(out, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = in.at(x, y);
      for (int o = -R; o <= R; ++o)
        out.at(clamp_idx(x + o, w), y) += k.taps[o + R] * v;
    }
  }
}

void conv_cols_adjoint(const Plane &in, const GaussianKernel &k, Plane &out) {
  const int w = in.width, h = in.height, R = k.radius;
  fill(out, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double v = in.at(x, y);
      for (int o = -R; o <= R; ++o)
        out.at(x, clamp_idx(y + o, h)) += k.taps[o + R] * v;
    }
  }
}

} // namespace

void blur_into(const Plane &u, const GaussianKernel &k, Plane &scratch,
               Plane &out) {
  assert(u.same_size(scratch) && u.same_size(out));
  conv_rows(u, k, scratch);
  conv_cols(scratch, k, out);
}

Plane blur(const Plane &u, const GaussianKernel &k) {
  Plane scratch(u.width, u.height), out(u.width, u.height);
  blur_into(u, k, scratch, out);
  return out;
}

void blur_adjoint_into(const Plane &v, const GaussianKernel &k, Plane &scratch,
                       Plane &out) {
  assert(v.same_size(scratch) && v.same_size(out));
  // (C_cols C_rows)^T = C_rows^T C_cols^T
  conv_cols_adjoint(v, k, scratch);
  conv_rows_adjoint(scratch, k, out);
}

Plane blur_adjoint(const Plane &v, const GaussianKernel &k) {
  Plane scratch(v.width, v.height), out(v.width, v.height);
  blur_adjoint_into(v, k, scratch, out);
  return out;
}

void downsample_into(const Plane &u, int scale, Plane &out) {
  if (u.width % scale != 0 || u.height % scale != 0)
    throw std::invalid_argument("plane dimensions not divisible by the scale");
  assert(out.width == u.width / scale && out.height == u.height / scale);
  const int off = scale / 2;
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      out.at(x, y) = u.at(scale * x + off, scale * y + off);
}

Plane downsample(const Plane &u, int scale) {
  if (u.width % scale != 0 || u.height % scale != 0)
    throw std::invalid_argument("plane dimensions not divisible by the scale");
  Plane out(u.width / scale, u.height / scale);
  downsample_into(u, scale, out);
  return out;
}

void downsample_adjoint_into(const Plane &f, int scale, Plane &out) {
  assert(out.width == f.width * scale && out.height == f.height * scale);
  const int off = scale / 2;
  fill(out, 0.0);
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x)
      out.at(scale * x + off, scale * y + off) = f.at(x, y);
}

Plane downsample_adjoint(const Plane &f, int scale, int hr_width,
                         int hr_height) {
  if (hr_width != f.width * scale || hr_height != f.height * scale)
    throw std::invalid_argument("HR dimensions inconsistent with LR and scale");
  Plane out(hr_width, hr_height);
  downsample_adjoint_into(f, scale, out);
  return out;
}

void apply_A_into(const Plane &u, const DegradationModel &m, Plane &scratch_hr,
                  Plane &scratch_hr2, Plane &out_lr) {
  if (u.width != m.hr_width || u.height != m.hr_height)
    throw std::invalid_argument("plane size does not match the model HR size");
  blur_into(u, m.kernel, scratch_hr, scratch_hr2);
  downsample_into(scratch_hr2, m.scale, out_lr);
}

Plane apply_A(const Plane &u, const DegradationModel &m) {
  Plane s1(m.hr_width, m.hr_height), s2(m.hr_width, m.hr_height);
  Plane out(m.lr_width, m.lr_height);
  apply_A_into(u, m, s1, s2, out);
  return out;
}

void apply_At_into(const Plane &f, const DegradationModel &m, Plane &scratch_hr,
                   Plane &scratch_hr2, Plane &out_hr) {
  if (f.width != m.lr_width || f.height != m.lr_height)
    throw std::invalid_argument("plane size does not match the model LR size");
  downsample_adjoint_into(f, m.scale, scratch_hr);
  blur_adjoint_into(scratch_hr, m.kernel, scratch_hr2, out_hr);
}

Plane apply_At(const Plane &f, const DegradationModel &m) {
  Plane s1(m.hr_width, m.hr_height), s2(m.hr_width, m.hr_height);
  Plane out(m.hr_width, m.hr_height);
  apply_At_into(f, m, s1, s2, out);
  return out;
}

void highpass_into(const Plane &u, const GaussianKernel &k, Plane &scratch,
                   Plane &scratch2, Plane &out) {
  blur_into(u, k, scratch, scratch2);
  sub_into(u, scratch2, out);
}

Plane highpass(const Plane &u, const GaussianKernel &k) {
  Plane s1(u.width, u.height), s2(u.width, u.height), out(u.width, u.height);
  highpass_into(u, k, s1, s2, out);
  return out;
}

void highpass_adjoint_into(const Plane &v, const GaussianKernel &k,
                           Plane &scratch, Plane &scratch2, Plane &out) {
  blur_adjoint_into(v, k, scratch, scratch2);
  sub_into(v, scratch2, out);
}

Plane highpass_adjoint(const Plane &v, const GaussianKernel &k) {
  Plane s1(v.width, v.height), s2(v.width, v.height), out(v.width, v.height);
  highpass_adjoint_into(v, k, s1, s2, out);
  return out;
}

namespace {

void randomize(PrimalVars &x, uint64_t seed) {
  Rng rng(seed);
  for (double &v : x.u.data) v = rng.uniform(-1.0, 1.0);
  for (Plane &w : x.w)
    for (double &v : w.data) v = rng.uniform(-1.0, 1.0);
}

} // namespace

double estimate_op_norm(
    const std::function<PrimalVars(const PrimalVars &)> &apply_KtK,
    const PrimalVars &prototype, int iters, uint64_t seed) {
  if (iters < 20)
    throw std::invalid_argument("operator norm estimation needs iters >= 20");

  PrimalVars v = prototype;
  randomize(v, seed);
  double n = norm2(v);
  if (n == 0.0) {
    randomize(v, seed + 1);
    n = norm2(v);
    if (n == 0.0)
      throw std::runtime_error("power iteration start vector is zero");
  }
  scale_in_place(v, 1.0 / n);

  double max_rayleigh = 0.0;
  for (int it = 0; it < iters; ++it) {
    PrimalVars z = apply_KtK(v);
    const double rayleigh = dot(v, z); // v has unit norm
    if (rayleigh > max_rayleigh) max_rayleigh = rayleigh;
    const double nz = norm2(z);
    if (nz == 0.0) break; // v is annihilated; spectrum seen so far stands
    scale_in_place(z, 1.0 / nz);
    v = std::move(z);
  }
  return std::sqrt(max_rayleigh < 0.0 ? 0.0 : max_rayleigh) * 1.01;
}

} // namespace cvxsr
