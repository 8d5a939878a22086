#include "cvxsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cvxsr/linops.hpp"

namespace cvxsr {

namespace {

constexpr double kSsimK1 = 0.01;
constexpr double kSsimK2 = 0.03;
constexpr int kSsimRadius = 5; // 11x11 window
constexpr double kSsimSigma = 1.5;

void check_pair(const MultiImage &a, const MultiImage &b) {
  validate_image(a);
  validate_image(b);
  if (a.channel_count() != b.channel_count() || a.width() != b.width() ||
      a.height() != b.height())
    throw std::invalid_argument("images differ in shape");
}

Plane clamped(const Plane &p) {
  Plane out = p;
  for (double &v : out.data) v = std::clamp(v, 0.0, 1.0);
  return out;
}

double channel_mse(const Plane &a, const Plane &b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double mse_to_db(double mse) {
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double channel_ssim(const Plane &pa, const Plane &pb) {
  const int w = pa.width, h = pa.height;
  if (w < 2 * kSsimRadius + 1 || h < 2 * kSsimRadius + 1)
    throw std::invalid_argument("image too small for an 11x11 SSIM window");

  const GaussianKernel win = make_gaussian(kSsimSigma, kSsimRadius);

  Plane aa(w, h), bb(w, h), ab(w, h);
  for (size_t i = 0; i < pa.size(); ++i) {
    aa.data[i] = pa.data[i] * pa.data[i];
    bb.data[i] = pb.data[i] * pb.data[i];
    ab.data[i] = pa.data[i] * pb.data[i];
  }

  // Windowed moments via separable filtering; only values at fully
  // contained window centers are read, where the boundary rule is inert.
  const Plane mu1 = blur(pa, win), mu2 = blur(pb, win);
  const Plane m11 = blur(aa, win), m22 = blur(bb, win), m12 = blur(ab, win);

  const double c1 = kSsimK1 * kSsimK1;
  const double c2 = kSsimK2 * kSsimK2;

  double acc = 0.0;
  long count = 0;
  for (int y = kSsimRadius; y < h - kSsimRadius; ++y) {
    for (int x = kSsimRadius; x < w - kSsimRadius; ++x) {
      const double u1 = mu1.at(x, y), u2 = mu2.at(x, y);
      const double s11 = m11.at(x, y) - u1 * u1;
      const double s22 = m22.at(x, y) - u2 * u2;
      const double s12 = m12.at(x, y) - u1 * u2;
      const double num = (2.0 * u1 * u2 + c1) * (2.0 * s12 + c2);
      const double den = (u1 * u1 + u2 * u2 + c1) * (s11 + s22 + c2);
      acc += num / den;
      ++count;
    }
  }
  return acc / static_cast<double>(count);
}

} // namespace

double psnr(const MultiImage &a, const MultiImage &b) {
  check_pair(a, b);
  double acc = 0.0;
  for (int c = 0; c < a.channel_count(); ++c)
    acc += channel_mse(clamped(a.channels[c]), clamped(b.channels[c]));
  return mse_to_db(acc / a.channel_count());
}

double ssim(const MultiImage &a, const MultiImage &b) {
  check_pair(a, b);
  double acc = 0.0;
  for (int c = 0; c < a.channel_count(); ++c)
    acc += channel_ssim(clamped(a.channels[c]), clamped(b.channels[c]));
  return acc / a.channel_count();
}

QualityReport evaluate_quality(const MultiImage &a, const MultiImage &b) {
  check_pair(a, b);
  QualityReport report;
  double mse_total = 0.0;
  double ssim_total = 0.0;
  for (int c = 0; c < a.channel_count(); ++c) {
    const Plane ca = clamped(a.channels[c]);
    const Plane cb = clamped(b.channels[c]);
    const double mse = channel_mse(ca, cb);
    mse_total += mse;
    report.psnr_per_channel.push_back(mse_to_db(mse));
    const double s = channel_ssim(ca, cb);
    ssim_total += s;
    report.ssim_per_channel.push_back(s);
  }
  report.psnr_db = mse_to_db(mse_total / a.channel_count());
  report.ssim = ssim_total / a.channel_count();
  return report;
}

} // namespace cvxsr
