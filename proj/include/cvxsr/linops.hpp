#ifndef CVXSR_LINOPS_HPP
#define CVXSR_LINOPS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "cvxsr/plane.hpp"

namespace cvxsr {

struct PrimalVars; // defined in prox.hpp

/// Symmetric 1D Gaussian tap set; taps have length 2*radius+1 and sum to 1.
struct GaussianKernel {
  double sigma = 0.0;
  int radius = 0;
  std::vector<double> taps;
};

/// Builds a normalized Gaussian with the given sigma, truncated at `radius`.
GaussianKernel make_gaussian(double sigma, int radius);

/// Anti-alias kernel for integer scale factor xi >= 2:
/// sigma = sqrt(xi^2 - 1) / 4, radius = ceil(3 sigma).
GaussianKernel make_kernel(int scale);

/// Ties the blur B and decimation D of the degradation A = DB to one scale.
struct DegradationModel {
  int scale = 0;
  GaussianKernel kernel;
  int lr_width = 0, lr_height = 0;
  int hr_width = 0, hr_height = 0;
};

/// Model for an HR image of the given size; HR dims must be divisible by scale.
DegradationModel make_model(int hr_width, int hr_height, int scale);

// Discrete gradient (forward differences, Neumann boundary) and its exact
// negative adjoint. <grad(u), p> == <u, -div(p)> holds to rounding.
VectorField grad(const Plane &u);
Plane div(const VectorField &p);
void grad_into(const Plane &u, VectorField &out);
void div_into(const VectorField &p, Plane &out);

// Separable Gaussian convolution with replicate (clamp-to-edge) boundary.
// blur_adjoint applies the literal transpose of the same linear map.
Plane blur(const Plane &u, const GaussianKernel &k);
Plane blur_adjoint(const Plane &v, const GaussianKernel &k);
void blur_into(const Plane &u, const GaussianKernel &k, Plane &scratch,
               Plane &out);
void blur_adjoint_into(const Plane &v, const GaussianKernel &k, Plane &scratch,
                       Plane &out);

// Decimation keeping the sample at offset (scale/2, scale/2) in each block;
// the adjoint re-inserts values at those offsets and zero-fills the rest.
Plane downsample(const Plane &u, int scale);
Plane downsample_adjoint(const Plane &f, int scale, int hr_width,
                         int hr_height);
void downsample_into(const Plane &u, int scale, Plane &out);
void downsample_adjoint_into(const Plane &f, int scale, Plane &out);

// Degradation A = D B and its adjoint A^T = B^T D^T.
Plane apply_A(const Plane &u, const DegradationModel &m);
Plane apply_At(const Plane &f, const DegradationModel &m);
void apply_A_into(const Plane &u, const DegradationModel &m, Plane &scratch_hr,
                  Plane &scratch_hr2, Plane &out_lr);
void apply_At_into(const Plane &f, const DegradationModel &m,
                   Plane &scratch_hr, Plane &scratch_hr2, Plane &out_hr);

// High-pass H = I - B, restricting candidate influence to the frequencies
// removed by the blur. H and H^T kill constants.
Plane highpass(const Plane &u, const GaussianKernel &k);
Plane highpass_adjoint(const Plane &v, const GaussianKernel &k);
void highpass_into(const Plane &u, const GaussianKernel &k, Plane &scratch,
                   Plane &scratch2, Plane &out);
void highpass_adjoint_into(const Plane &v, const GaussianKernel &k,
                           Plane &scratch, Plane &scratch2, Plane &out);

/// Power iteration on K^T K, started from a seeded random stacked vector.
/// Returns sqrt(largest Rayleigh quotient) * 1.01; deterministic given seed.
/// Requires iters >= 20.
double estimate_op_norm(
    const std::function<PrimalVars(const PrimalVars &)> &apply_KtK,
    const PrimalVars &prototype, int iters, uint64_t seed);

} // namespace cvxsr

#endif
