#include "cvxsr/resample.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvxsr {

namespace {

// Cubic convolution weight, a = -0.5 (Catmull-Rom).
double cubic_weight(double t) {
  t = std::abs(t);
  if (t <= 1.0) return (1.5 * t - 2.5) * t * t + 1.0;
  if (t < 2.0) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
  return 0.0;
}

struct Taps {
  int base;         // index of the first of four source samples
  double weight[4];
};

std::vector<Taps> make_taps(int src_n, int dst_n) {
  std::vector<Taps> taps(dst_n);
  const double step = static_cast<double>(src_n) / dst_n;
  for (int i = 0; i < dst_n; ++i) {
    const double s = (i + 0.5) * step - 0.5;
    const int i0 = static_cast<int>(std::floor(s));
    taps[i].base = i0 - 1;
    for (int m = 0; m < 4; ++m)
      taps[i].weight[m] = cubic_weight(s - (i0 - 1 + m));
  }
  return taps;
}

inline int clamp_idx(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

} // namespace

Plane bicubic_resize(const Plane &src, int out_w, int out_h) {
  if (out_w < 1 || out_h < 1)
    throw std::invalid_argument("bicubic_resize: target size must be >= 1");

  const std::vector<Taps> tx = make_taps(src.width, out_w);
  const std::vector<Taps> ty = make_taps(src.height, out_h);

  Plane mid(out_w, src.height);
  for (int y = 0; y < src.height; ++y) {
    for (int x = 0; x < out_w; ++x) {
      const Taps &t = tx[x];
      double acc = 0.0;
      for (int m = 0; m < 4; ++m)
        acc += t.weight[m] * src.at(clamp_idx(t.base + m, src.width), y);
      mid.at(x, y) = acc;
    }
  }

  Plane out(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const Taps &t = ty[y];
    for (int x = 0; x < out_w; ++x) {
      double acc = 0.0;
      for (int m = 0; m < 4; ++m)
        acc += t.weight[m] * mid.at(x, clamp_idx(t.base + m, src.height));
      out.at(x, y) = acc;
    }
  }
  return out;
}

MultiImage bicubic_resize(const MultiImage &src, int out_w, int out_h) {
  MultiImage out;
  out.channels.reserve(src.channels.size());
  for (const Plane &c : src.channels)
    out.channels.push_back(bicubic_resize(c, out_w, out_h));
  return out;
}

} // namespace cvxsr
