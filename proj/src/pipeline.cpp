#include "cvxsr/pipeline.hpp"

#include <algorithm>
#include <stdexcept>

#include "cvxsr/rng.hpp"

namespace cvxsr {

void validate_candidates(const CandidateSet &set, int hr_width, int hr_height,
                         int channel_count) {
  if (set.images.empty())
    throw std::invalid_argument("candidate set is empty");
  for (const MultiImage &img : set.images) {
    validate_image(img);
    if (img.width() != hr_width || img.height() != hr_height)
      throw std::invalid_argument("candidate dimensions do not match the HR target");
    if (img.channel_count() != channel_count)
      throw std::invalid_argument("candidate channel count does not match the input");
  }
}

DegradeResult degrade(const MultiImage &hr, int scale) {
  validate_image(hr);
  if (scale < 2)
    throw std::invalid_argument("scale factor must be at least 2");
  if (hr.width() % scale != 0 || hr.height() % scale != 0)
    throw std::invalid_argument("HR dimensions must be divisible by the scale");

  DegradeResult out;
  out.lr = bicubic_resize(hr, hr.width() / scale, hr.height() / scale);
  out.lr_upsampled = bicubic_resize(out.lr, hr.width(), hr.height());
  return out;
}

CandidateSet synth_candidates(const MultiImage &hr, int k, int max_shift,
                              double noise_sigma, uint64_t seed) {
  validate_image(hr);
  if (k < 1)
    throw std::invalid_argument("candidate count must be at least 1");
  if (max_shift < 0 || noise_sigma < 0.0)
    throw std::invalid_argument("max_shift and noise_sigma must be non-negative");

  Rng rng(seed);
  const int w = hr.width(), h = hr.height();

  CandidateSet set;
  set.images.reserve(k);
  for (int i = 0; i < k; ++i) {
    const int dx = max_shift > 0 ? rng.uniform_int(-max_shift, max_shift) : 0;
    const int dy = max_shift > 0 ? rng.uniform_int(-max_shift, max_shift) : 0;

    MultiImage img;
    img.channels.reserve(hr.channels.size());
    for (const Plane &src : hr.channels) {
      Plane dst(w, h);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const int sx = std::clamp(x - dx, 0, w - 1);
          const int sy = std::clamp(y - dy, 0, h - 1);
          dst.at(x, y) = src.at(sx, sy);
        }
      img.channels.push_back(std::move(dst));
    }
    for (Plane &c : img.channels)
      if (noise_sigma > 0.0)
        for (double &v : c.data) v += noise_sigma * rng.gaussian();

    set.images.push_back(std::move(img));
    set.sources.push_back("synthetic shift(" + std::to_string(dx) + "," +
                          std::to_string(dy) + ")");
  }
  return set;
}

HallucinateResult hallucinate(const MultiImage &lr,
                              const CandidateSet &candidates, int scale,
                              const SolverConfig &cfg) {
  validate_image(lr);
  const int hr_w = lr.width() * scale;
  const int hr_h = lr.height() * scale;
  validate_candidates(candidates, hr_w, hr_h, lr.channel_count());

  const DegradationModel model = make_model(hr_w, hr_h, scale);

  HallucinateResult out;
  out.image.channels.reserve(lr.channels.size());
  for (int c = 0; c < lr.channel_count(); ++c) {
    std::vector<Plane> g;
    g.reserve(candidates.images.size());
    for (const MultiImage &cand : candidates.images)
      g.push_back(cand.channels[c]);

    SolveResult res = solve(lr.channels[c], g, model, cfg);
    out.image.channels.push_back(std::move(res.u));
    out.channel_diagnostics.push_back(std::move(res.diagnostics));
  }
  return out;
}

void validate_spec(const ExperimentSpec &spec) {
  const bool has_hr = !spec.hr_path.empty();
  const bool has_lr = !spec.lr_path.empty();
  if (has_hr == has_lr)
    throw std::invalid_argument(
        "exactly one of the HR (degrade) and LR (solve) inputs must be set");
  if (spec.scale < 2)
    throw std::invalid_argument("scale factor must be at least 2");
}

} // namespace cvxsr
