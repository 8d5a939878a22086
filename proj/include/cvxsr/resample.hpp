#ifndef CVXSR_RESAMPLE_HPP
#define CVXSR_RESAMPLE_HPP

#include "cvxsr/plane.hpp"

namespace cvxsr {

/// Catmull-Rom bicubic resampling (cubic convolution, a = -0.5) with a
/// center-aligned sampling grid and replicate boundary. Reproduces
/// constants everywhere and linear ramps away from the borders.
Plane bicubic_resize(const Plane &src, int out_w, int out_h);
MultiImage bicubic_resize(const MultiImage &src, int out_w, int out_h);

} // namespace cvxsr

#endif
