#pragma once

#include "gi/moments.hpp"

namespace gi {

enum class MomentLevel { SingleMode, Pixel, BucketByPixel };

/// Joint raw moments <X1^p X2^q>, p+q <= 4, of one of the observable pairs
///   SingleMode:    (n1, n2)              one correlated mode pair
///   Pixel:         (N1, N2)              M mode pairs summed per arm
///   BucketByPixel: (bucket, N2_in)       R cells summed in the object arm,
///                                        one correlated reference pixel
/// At bucket level out_m additionally holds <bucket^p><N2^q>, the exact
/// moments of the bucket paired with an uncorrelated (out-of-mask) pixel.
struct JointMomentTable {
  MomentLevel level = MomentLevel::SingleMode;
  long modes = 1;  // M
  long cells = 1;  // R
  real m[5][5]{};
  real out_m[5][5]{};
  bool has_out = false;

  real operator()(int p, int q) const { return m[p][q]; }
  real out(int p, int q) const { return out_m[p][q]; }
};

/// Sum of M independent identically correlated mode pairs per arm.
JointMomentTable pixel_from_single(const SingleModeJointMoments& s, long M);

/// Bucket of R independent cells in the object arm against one reference
/// pixel, correlated with exactly one of the cells; out-pixel moments filled
/// by statistical independence.
JointMomentTable bucket_from_pixel(const JointMomentTable& pixel, long R);

/// Centered quantities, all expanded from raw moments:
/// variances, covariance, <(dX1 dX2)^2>, <dX1^3 dX2>, <dX1 dX2^3>, the
/// marginal 4th central moments, and the variance / 4th central moment of
/// the difference X1 - X2.
struct CentralMoments {
  real mean1 = 0, mean2 = 0;
  real var1 = 0, var2 = 0, cov = 0;
  real c22 = 0, c31 = 0, c13 = 0, c40 = 0, c04 = 0;

  real var_diff() const { return var1 + var2 - 2 * cov; }
  real mu4_diff() const { return c40 - 4 * c31 + 6 * c22 - 4 * c13 + c04; }
};

CentralMoments central_views(const real m[5][5]);
CentralMoments central_views(const JointMomentTable& t);
/// Bucket level only: central views of the (bucket, out-pixel) pair.
CentralMoments central_views_out(const JointMomentTable& t);

}  // namespace gi
