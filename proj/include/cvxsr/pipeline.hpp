#ifndef CVXSR_PIPELINE_HPP
#define CVXSR_PIPELINE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cvxsr/pd_solver.hpp"
#include "cvxsr/plane.hpp"
#include "cvxsr/resample.hpp"

namespace cvxsr {

/// Pre-aligned HR exemplar images, in the order that defines g_i indexing.
struct CandidateSet {
  std::vector<MultiImage> images;
  std::vector<std::string> sources; // provenance, parallel to images
};

/// Throws std::invalid_argument unless the set is non-empty and every
/// candidate matches the given HR dimensions and channel count.
void validate_candidates(const CandidateSet &set, int hr_width, int hr_height,
                         int channel_count);

struct DegradeResult {
  MultiImage lr;           // bicubic downsampling by the scale factor
  MultiImage lr_upsampled; // bicubic re-upsampling; the comparison baseline
};

/// Experiment degradation: bicubic down by the scale, then bicubic up.
DegradeResult degrade(const MultiImage &hr, int scale);

/// Builds k candidates as copies of hr, each translated by an integer shift
/// drawn uniformly from [-max_shift, max_shift]^2 (replicate boundary) with
/// zero-mean Gaussian pixel noise added. Deterministic given the seed.
CandidateSet synth_candidates(const MultiImage &hr, int k, int max_shift,
                              double noise_sigma, uint64_t seed);

struct HallucinateResult {
  MultiImage image;
  std::vector<SolveDiagnostics> channel_diagnostics;
};

/// Channel-by-channel optimization: each channel of lr is solved against
/// the matching channel of every candidate, independently of the others.
HallucinateResult hallucinate(const MultiImage &lr,
                              const CandidateSet &candidates, int scale,
                              const SolverConfig &cfg);

/// One experiment as driven from the command line. Exactly one of hr_path
/// (degrade mode) and lr_path (solve mode) may be set.
struct ExperimentSpec {
  int scale = 4;
  std::string hr_path;
  std::string lr_path;
  std::vector<std::string> candidate_paths;
  std::string output_path;
  SolverConfig config;
};

void validate_spec(const ExperimentSpec &spec);

} // namespace cvxsr

#endif
