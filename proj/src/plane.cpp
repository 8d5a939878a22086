#include "cvxsr/plane.hpp"

#include <algorithm>
#include <cmath>

namespace cvxsr {

void validate_image(const MultiImage &img) {
  const int n = img.channel_count();
  if (n < 1 || n > 4)
    throw std::invalid_argument("image must have between 1 and 4 channels");
  for (const Plane &c : img.channels)
    if (!c.same_size(img.channels[0]))
      throw std::invalid_argument("image channels differ in size");
}

void fill(Plane &p, double value) {
  std::fill(p.data.begin(), p.data.end(), value);
}

void copy_into(const Plane &src, Plane &dst) {
  assert(src.same_size(dst));
  dst.data = src.data;
}

Plane add(const Plane &a, const Plane &b) {
  assert(a.same_size(b));
  Plane out(a.width, a.height);
  for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] + b.data[i];
  return out;
}

Plane sub(const Plane &a, const Plane &b) {
  assert(a.same_size(b));
  Plane out(a.width, a.height);
  for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] - b.data[i];
  return out;
}

Plane scaled(const Plane &a, double s) {
  Plane out(a.width, a.height);
  for (size_t i = 0; i < a.size(); ++i) out.data[i] = s * a.data[i];
  return out;
}

void sub_into(const Plane &a, const Plane &b, Plane &out) {
  assert(a.same_size(b) && a.same_size(out));
  for (size_t i = 0; i < a.size(); ++i) out.data[i] = a.data[i] - b.data[i];
}

void axpy(Plane &dst, double s, const Plane &src) {
  assert(dst.same_size(src));
  for (size_t i = 0; i < dst.size(); ++i) dst.data[i] += s * src.data[i];
}

void scale_in_place(Plane &p, double s) {
  for (double &v : p.data) v *= s;
}

double dot(const Plane &a, const Plane &b) {
  assert(a.same_size(b));
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a.data[i] * b.data[i];
  return acc;
}

double norm2(const Plane &a) { return std::sqrt(dot(a, a)); }

double sum_abs(const Plane &a) {
  double acc = 0.0;
  for (double v : a.data) acc += std::abs(v);
  return acc;
}

double max_abs_diff(const Plane &a, const Plane &b) {
  assert(a.same_size(b));
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

bool all_finite(const Plane &a) {
  for (double v : a.data)
    if (!std::isfinite(v)) return false;
  return true;
}

} // namespace cvxsr
