#ifndef CVXSR_PLANE_HPP
#define CVXSR_PLANE_HPP

#include <cassert>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cvxsr {

/// Single-channel scalar image, row-major, nominal intensity range [0,1].
/// Values may leave [0,1] while a solver is iterating; they must stay finite.
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  Plane() = default;
  Plane(int w, int h, double value = 0.0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, value) {
    assert(w >= 0 && h >= 0);
  }

  double &at(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[static_cast<size_t>(y) * width + x];
  }
  double at(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[static_cast<size_t>(y) * width + x];
  }

  size_t size() const { return data.size(); }
  bool same_size(const Plane &o) const {
    return width == o.width && height == o.height;
  }
};

/// Per-pixel 2-vector field; px holds x-components, py holds y-components.
struct VectorField {
  Plane px;
  Plane py;

  VectorField() = default;
  VectorField(int w, int h) : px(w, h), py(w, h) {}

  bool same_size(const VectorField &o) const {
    return px.same_size(o.px) && py.same_size(o.py);
  }
};

/// Ordered list of equally sized planes; 1 = grayscale, 3 = RGB.
struct MultiImage {
  std::vector<Plane> channels;

  MultiImage() = default;
  explicit MultiImage(std::vector<Plane> ch) : channels(std::move(ch)) {}

  int width() const { return channels.empty() ? 0 : channels[0].width; }
  int height() const { return channels.empty() ? 0 : channels[0].height; }
  int channel_count() const { return static_cast<int>(channels.size()); }
};

/// Throws std::invalid_argument unless 1 <= channels <= 4 and all dims equal.
void validate_image(const MultiImage &img);

// Elementwise plane arithmetic. All binary ops require matching sizes.
void fill(Plane &p, double value);
void copy_into(const Plane &src, Plane &dst);
Plane add(const Plane &a, const Plane &b);
Plane sub(const Plane &a, const Plane &b);
Plane scaled(const Plane &a, double s);
void sub_into(const Plane &a, const Plane &b, Plane &out);
void axpy(Plane &dst, double s, const Plane &src); // dst += s * src
void scale_in_place(Plane &p, double s);

double dot(const Plane &a, const Plane &b);
double norm2(const Plane &a);          // Euclidean norm
double sum_abs(const Plane &a);        // L1
double max_abs_diff(const Plane &a, const Plane &b);
bool all_finite(const Plane &a);

} // namespace cvxsr

#endif
