#ifndef CVXSR_METRICS_HPP
#define CVXSR_METRICS_HPP

#include <vector>

#include "cvxsr/plane.hpp"

namespace cvxsr {

struct QualityReport {
  double psnr_db = 0.0; // +infinity when the inputs are identical
  double ssim = 0.0;
  std::vector<double> psnr_per_channel;
  std::vector<double> ssim_per_channel;
};

/// Peak signal-to-noise ratio in dB over values clamped to [0,1], with peak
/// 1.0 and the MSE averaged over all pixels and channels. Identical inputs
/// yield +infinity.
double psnr(const MultiImage &a, const MultiImage &b);

/// Single-scale SSIM: 11x11 Gaussian window with sigma 1.5, K1 = 0.01,
/// K2 = 0.03, dynamic range 1.0, averaged over fully contained windows and
/// channels. Values are clamped to [0,1] first. Requires dims >= 11x11.
double ssim(const MultiImage &a, const MultiImage &b);

/// Both indices plus per-channel breakdowns.
QualityReport evaluate_quality(const MultiImage &a, const MultiImage &b);

} // namespace cvxsr

#endif
