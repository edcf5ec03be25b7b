#include "gi/composition.hpp"

#include <cstdint>
#include <stdexcept>

namespace gi {

namespace {

// Falling factorial n(n-1)...(n-k+1), exact in integers while it fits.
real fall(long n, int k) {
  if (n < k) return 0.0L;
  if (n <= 60000) {
    std::uint64_t acc = 1;
    for (int i = 0; i < k; ++i) acc *= static_cast<std::uint64_t>(n - i);
    return static_cast<real>(acc);
  }
  real acc = 1.0L;
  for (int i = 0; i < k; ++i) acc *= static_cast<real>(n - i);
  return acc;
}

// Marginal composition <S^k> for a sum S of n iid copies of a variable with
// raw moments m1..m4 (same polynomial for pixels in M and buckets in R).
void compose_marginal(real out[5], long n, const real in[5]) {
  const real m1 = in[1], m2 = in[2], m3 = in[3], m4 = in[4];
  const real f1 = fall(n, 1), f2 = fall(n, 2), f3 = fall(n, 3),
             f4 = fall(n, 4);
  out[0] = 1.0L;
  out[1] = f1 * m1;
  out[2] = f1 * m2 + f2 * m1 * m1;
  out[3] = f1 * m3 + 3 * f2 * m2 * m1 + f3 * m1 * m1 * m1;
  out[4] = f1 * m4 + f2 * (3 * m2 * m2 + 4 * m3 * m1) +
           6 * f3 * m2 * m1 * m1 + f4 * m1 * m1 * m1 * m1;
}

}  // namespace

JointMomentTable pixel_from_single(const SingleModeJointMoments& s, long M) {
  if (M < 1) throw std::invalid_argument("pixel_from_single: M must be >= 1");

  JointMomentTable t;
  t.level = MomentLevel::Pixel;
  t.modes = M;

  real marg1[5], marg2[5], comp1[5], comp2[5];
  for (int k = 0; k <= 4; ++k) {
    marg1[k] = s(k, 0);
    marg2[k] = s(0, k);
  }
  compose_marginal(comp1, M, marg1);
  compose_marginal(comp2, M, marg2);
  for (int k = 0; k <= 4; ++k) {
    t.m[k][0] = comp1[k];
    t.m[0][k] = comp2[k];
  }

  const real n10 = s(1, 0), n01 = s(0, 1), n20 = s(2, 0), n02 = s(0, 2),
             n30 = s(3, 0), n03 = s(0, 3), n11 = s(1, 1), n21 = s(2, 1),
             n12 = s(1, 2), n22 = s(2, 2), n31 = s(3, 1), n13 = s(1, 3);
  const real f1 = fall(M, 1), f2 = fall(M, 2), f3 = fall(M, 3),
             f4 = fall(M, 4);

  t.m[1][1] = f1 * n11 + f2 * n10 * n01;
  t.m[2][1] = f1 * n21 + f2 * (n20 * n01 + 2 * n11 * n10) +
              f3 * n10 * n10 * n01;
  t.m[1][2] = f1 * n12 + f2 * (n02 * n10 + 2 * n11 * n01) +
              f3 * n01 * n01 * n10;
  t.m[2][2] = f1 * n22 +
              f2 * (n20 * n02 + 2 * n21 * n01 + 2 * n11 * n11 + 2 * n12 * n10) +
              f3 * (n20 * n01 * n01 + n10 * n10 * n02 + 4 * n11 * n10 * n01) +
              f4 * n10 * n10 * n01 * n01;
  t.m[3][1] = f1 * n31 + f2 * (n30 * n01 + 3 * n20 * n11 + 3 * n21 * n10) +
              f3 * (3 * n11 * n10 * n10 + 3 * n20 * n10 * n01) +
              f4 * n10 * n10 * n10 * n01;
  t.m[1][3] = f1 * n13 + f2 * (n03 * n10 + 3 * n02 * n11 + 3 * n12 * n01) +
              f3 * (3 * n11 * n01 * n01 + 3 * n02 * n01 * n10) +
              f4 * n01 * n01 * n01 * n10;
  return t;
}

JointMomentTable bucket_from_pixel(const JointMomentTable& p, long R) {
  if (p.level != MomentLevel::Pixel)
    throw std::invalid_argument("bucket_from_pixel: input must be pixel level");
  if (R < 1) throw std::invalid_argument("bucket_from_pixel: R must be >= 1");

  JointMomentTable t;
  t.level = MomentLevel::BucketByPixel;
  t.modes = p.modes;
  t.cells = R;
  t.has_out = true;

  real marg1[5], comp1[5];
  for (int k = 0; k <= 4; ++k) marg1[k] = p(k, 0);
  compose_marginal(comp1, R, marg1);
  for (int k = 0; k <= 4; ++k) {
    t.m[k][0] = comp1[k];
    t.m[0][k] = p(0, k);  // the reference pixel is still a single pixel
  }

  const real N1 = p(1, 0), N2 = p(2, 0), N3 = p(3, 0);
  const real m01 = p(0, 1), m02 = p(0, 2), m03 = p(0, 3);
  const real r1 = static_cast<real>(R - 1);
  const real r2 = fall(R - 1, 2), r3 = fall(R - 1, 3);

  t.m[1][1] = p(1, 1) + r1 * N1 * m01;
  t.m[2][1] = p(2, 1) + r1 * (N2 * m01 + 2 * p(1, 1) * N1) +
              r2 * N1 * N1 * m01;
  t.m[1][2] = p(1, 2) + r1 * N1 * m02;
  t.m[2][2] = p(2, 2) + r1 * (N2 * m02 + 2 * p(1, 2) * N1) +
              r2 * N1 * N1 * m02;
  t.m[3][1] = p(3, 1) +
              r1 * (N3 * m01 + 3 * N2 * p(1, 1) + 3 * p(2, 1) * N1) +
              r2 * (3 * p(1, 1) * N1 * N1 + 3 * N2 * N1 * m01) +
              r3 * N1 * N1 * N1 * m01;
  // The R-1 uncorrelated cells factor against the whole pixel moment
  // <N2^3>; pairing them with <N2>^3 instead breaks the Var closed forms.
  t.m[1][3] = p(1, 3) + r1 * N1 * m03;

  for (int q = 0; q <= 4; ++q)
    for (int k = 0; k + q <= 4; ++k) t.out_m[k][q] = t.m[k][0] * p(0, q);
  return t;
}

CentralMoments central_views(const real m[5][5]) {
  const real a = m[1][0], b = m[0][1];
  CentralMoments c;
  c.mean1 = a;
  c.mean2 = b;
  c.var1 = m[2][0] - a * a;
  c.var2 = m[0][2] - b * b;
  c.cov = m[1][1] - a * b;
  c.c22 = m[2][2] - 2 * b * m[2][1] - 2 * a * m[1][2] + b * b * m[2][0] +
          a * a * m[0][2] + 4 * a * b * m[1][1] - 3 * a * a * b * b;
  c.c31 = m[3][1] - 3 * a * m[2][1] + 3 * a * a * m[1][1] - b * m[3][0] +
          3 * a * b * m[2][0] - 3 * a * a * a * b;
  c.c13 = m[1][3] - 3 * b * m[1][2] + 3 * b * b * m[1][1] - a * m[0][3] +
          3 * a * b * m[0][2] - 3 * a * b * b * b;
  c.c40 = m[4][0] - 4 * a * m[3][0] + 6 * a * a * m[2][0] - 3 * a * a * a * a;
  c.c04 = m[0][4] - 4 * b * m[0][3] + 6 * b * b * m[0][2] - 3 * b * b * b * b;
  return c;
}

CentralMoments central_views(const JointMomentTable& t) {
  return central_views(t.m);
}

CentralMoments central_views_out(const JointMomentTable& t) {
  if (!t.has_out)
    throw std::invalid_argument(
        "central_views_out: table has no out-pixel moments");
  return central_views(t.out_m);
}

}  // namespace gi
