#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gi/geometry.hpp"
#include "gi/protocols.hpp"

namespace gi {

/// Binary transmission mask on a 2-D cell grid (the "numerical mask": cells
/// with T=0 are zeroed in software before bucket summation).
struct MaskSpec {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> transmission;  // rows*cols, row-major, values 0/1

  int cell_count() const { return rows * cols; }
  int in_cell_count() const;
  int out_cell_count() const;
  std::vector<int> in_cells() const;
  std::vector<int> out_cells() const;
  void validate() const;  // R >= 1 and at least one T=0 cell

  /// Single-row mask: `in` transmitting cells followed by `out` opaque ones.
  static MaskSpec blocks(int in, int out);
  /// Grid with T=1 inside the rectangle [r0,r1) x [c0,c1).
  static MaskSpec rect(int rows, int cols, int r0, int c0, int r1, int c1);
};

/// K frames of photon counts on congruent object- and reference-arm grids.
/// Object-arm counts are stored unmasked; the mask is applied at bucket
/// summation time, so a stack can be re-analyzed under any congruent mask.
/// Counts are integers until normalize_frames turns them into reals.
struct FrameStack {
  MaskSpec mask;
  ExperimentParams params;
  std::uint64_t seed = 0;
  long frames = 0;
  bool normalized = false;

  std::vector<std::uint32_t> obj_counts, ref_counts;  // frames * cells each
  std::vector<double> obj_values, ref_values;         // normalized variant
  std::vector<double> frame_mu;  // per-frame mu draws when V(mu) > 0
  long dropped_frames = 0;
  std::vector<std::string> warnings;

  int cell_count() const { return mask.cell_count(); }
  double obj(long frame, int cell) const;
  double ref(long frame, int cell) const;
  /// Sum of object-arm counts over the T=1 cells of `m`.
  double bucket(long frame, const MaskSpec& m) const;
};

struct GhostImage {
  ProtocolKind kind = ProtocolKind::Covariance;
  int rows = 0, cols = 0;
  long frames_used = 0;
  std::vector<double> values;        // one estimator value per cell
  std::vector<std::uint8_t> flags;   // 1 = undefined (zero denominator mean)
};

struct SnrReport {
  double contrast = 0;
  double noise = 0;
  double snr = 0;
  bool degenerate = false;  // 0/0, reported as snr = 0
  int in_cells_used = 0;
  int out_cells_used = 0;
};

struct MomentEstimate {
  double value[5][5]{};
  double se[5][5]{};
};

struct EmpiricalMoments {
  MomentEstimate pixel;       // <N1^p N2^q> of one grid cell's arm pair
  MomentEstimate bucket_in;   // <bucket^p N2^q>, N2 averaged over T=1 cells
  MomentEstimate bucket_out;  // <bucket^p N2^q>, N2 averaged over T=0 cells
  long frames = 0;
};

/// Monte-Carlo generation of a frame stack. Every cell carries M independent
/// mode pairs; per mode, twin beams draw one Bose-Einstein photon number
/// thinned independently into the two arms, thermal light draws a
/// Bose-Einstein mode of mean 2 mu, splits it 50/50 and thins each arm. When
/// V(mu) > 0, each frame first draws mu from a zero-truncated Gaussian.
/// Identical (params, mask, seed) give bit-identical stacks for any worker
/// count (per-frame counter-based RNG streams).
FrameStack sample_stack(const ExperimentParams& params, const MaskSpec& mask,
                        std::uint64_t seed, int workers = 1);

/// Divides both arms of each frame by that frame's mean reference-arm count
/// over `region` (all reference cells when empty), then rescales by the
/// stack-global mean so the absolute scale is preserved. Frames whose region
/// mean is zero are dropped with a warning.
FrameStack normalize_frames(const FrameStack& stack,
                            const std::vector<int>& region = {});

/// Ghost image S(x) for every reference cell from sample averages over the
/// frames; the mask defines the bucket.
GhostImage reconstruct(const FrameStack& stack, ProtocolKind kind,
                       const MaskSpec& mask);

/// Eq.-(1) estimate by space averages: contrast between the T=1 and T=0
/// regions over noise from the two regions' cell-to-cell variances.
SnrReport empirical_snr(const GhostImage& image, const MaskSpec& mask);

/// Sample raw joint moments, p+q <= 4, at pixel and bucket level, with
/// standard errors (delete-one jackknife over frames, which for these frame
/// means equals the classical standard error of the mean).
EmpiricalMoments empirical_moments(const FrameStack& stack);

}  // namespace gi
