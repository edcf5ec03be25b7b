#include <doctest.h>

#include <cmath>

#include "gi/composition.hpp"
#include "oracle.hpp"

using namespace gi;

namespace {

double md(const JointMomentTable& t, int p, int q) {
  return static_cast<double>(t(p, q));
}

}  // namespace

TEST_CASE("pixel composition with M=1 is the identity") {
  const auto s = twin_single_mode(0.7, 0.8, 0.6);
  const auto t = pixel_from_single(s, 1);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q)
      CHECK(md(t, p, q) == doctest::Approx(static_cast<double>(s(p, q))));
}

TEST_CASE("twin pixel <N1 N2> at mu=1, eta=1, M=2 (paper substitution)") {
  const auto t = pixel_from_single(twin_single_mode(1, 1, 1), 2);
  CHECK(md(t, 1, 1) == doctest::Approx(8.0));  // 2*3 + 2*1*1
}

TEST_CASE("bucket composition with R=1 keeps the pixel correlators") {
  const auto p = pixel_from_single(thermal_single_mode(0.9, 0.8, 0.5), 3);
  const auto b = bucket_from_pixel(p, 1);
  for (int pw = 0; pw <= 4; ++pw)
    for (int q = 0; pw + q <= 4; ++q)
      CHECK(md(b, pw, q) == doctest::Approx(md(p, pw, q)));
}

TEST_CASE("twin bucket <bucket N2_in> at mu=1, eta=1, M=1, R=2") {
  const auto b = bucket_from_pixel(pixel_from_single(twin_single_mode(1, 1, 1), 1), 2);
  CHECK(md(b, 1, 1) == doctest::Approx(4.0));  // <N1 N2> + (R-1)<N1><N2>
}

TEST_CASE("central views: paper spot values and trivial cases") {
  const auto tw = pixel_from_single(twin_single_mode(1, 1, 1), 1);
  CHECK(static_cast<double>(central_views(tw).cov) == doctest::Approx(2.0));
  const auto th = pixel_from_single(thermal_single_mode(1, 1, 1), 1);
  CHECK(static_cast<double>(central_views(th).cov) == doctest::Approx(1.0));

  // zero second arm -> zero covariance
  const auto z = thermal_single_mode(1.0, 0.9, 0.0);
  const auto cz = central_views(pixel_from_single(z, 4));
  CHECK(static_cast<double>(cz.cov) == 0.0);
}

TEST_CASE("bucket out-pixel independence is exact") {
  for (SourceKind src : {SourceKind::TwinBeam, SourceKind::Thermal})
    for (long m : {1L, 5L})
      for (long r : {1L, 7L}) {
        const auto b = bucket_from_pixel(
            pixel_from_single(single_mode_moments(src, 1.3, 1, 1), m), r);
        const auto co = central_views_out(b);
        CHECK(static_cast<double>(co.cov) == 0.0);
        for (int p = 0; p <= 4; ++p)
          for (int q = 0; p + q <= 4; ++q)
            CHECK(static_cast<double>(b.out(p, q)) ==
                  doctest::Approx(md(b, p, 0) * md(b, 0, q)));
      }
}

TEST_CASE("twin minus thermal pixel covariance equals M eta^2 mu") {
  for (double mu : {0.3, 2.0})
    for (double eta : {0.5, 1.0})
      for (long m : {1L, 6L, 40L}) {
        const auto ctw = central_views(
            pixel_from_single(twin_single_mode(mu, eta, eta), m));
        const auto cth = central_views(
            pixel_from_single(thermal_single_mode(mu, eta, eta), m));
        CHECK(static_cast<double>(ctw.cov - cth.cov) ==
              doctest::Approx(m * eta * eta * mu).epsilon(1e-12));
        CHECK(static_cast<double>(ctw.cov - cth.cov) > 0.0);
      }
}

TEST_CASE("mode composition is not associative across nesting") {
  // Treating an M=2 pixel as if it were one mode and composing 3 more does
  // not reproduce the direct 6-mode pixel: nesting is disallowed.
  const auto s = thermal_single_mode(0.8, 1, 1);
  const auto direct = pixel_from_single(s, 6);
  const auto inner = pixel_from_single(s, 2);
  SingleModeJointMoments fake;
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) fake.m[p][q] = inner(p, q);
  const auto nested = pixel_from_single(fake, 3);
  CHECK(md(nested, 1, 0) == doctest::Approx(md(direct, 1, 0)));  // means agree
  CHECK(std::fabs(md(nested, 3, 1) - md(direct, 3, 1)) >
        1e-6 * std::fabs(md(direct, 3, 1)));
}

TEST_CASE("analytic tables match sum-of-modes sampling oracles on a small "
          "(mu, M, R) grid (5 SE)") {
  oracle::Rng rng(0x5eed0002);
  const long frames = 60000;
  for (SourceKind src : {SourceKind::TwinBeam, SourceKind::Thermal})
    for (double mu : {0.2, 0.5, 1.0})
      for (long m : {1L, 2L, 3L})
        for (long r : {1L, 2L, 3L}) {
          const auto pix =
              pixel_from_single(single_mode_moments(src, mu, 0.9, 0.7), m);
          const auto buck = bucket_from_pixel(pix, r);
          oracle::MomentAccumulator acc_pix, acc_in, acc_out;
          for (long k = 0; k < frames; ++k) {
            long bucket_n1 = 0, in_n2 = 0, out_n2 = 0;
            long first_cell_n1 = 0;
            for (long cell = 0; cell <= r; ++cell) {  // cell r is "out"
              long n1 = 0, n2 = 0;
              for (long mode = 0; mode < m; ++mode) {
                const auto [a, b] = src == SourceKind::TwinBeam
                                        ? oracle::twin_pair(rng, mu, 0.9, 0.7)
                                        : oracle::thermal_pair(rng, mu, 0.9, 0.7);
                n1 += a;
                n2 += b;
              }
              if (cell < r) bucket_n1 += n1;
              if (cell == 0) {
                first_cell_n1 = n1;
                in_n2 = n2;
              }
              if (cell == r) out_n2 = n2;
            }
            acc_pix.add(static_cast<double>(first_cell_n1),
                        static_cast<double>(in_n2));
            acc_in.add(static_cast<double>(bucket_n1),
                       static_cast<double>(in_n2));
            acc_out.add(static_cast<double>(bucket_n1),
                        static_cast<double>(out_n2));
          }
          for (int p = 0; p <= 4; ++p)
            for (int q = 0; p + q <= 4; ++q) {
              if (p + q == 0) continue;
              CAPTURE(static_cast<int>(src));
              CAPTURE(mu);
              CAPTURE(m);
              CAPTURE(r);
              CAPTURE(p);
              CAPTURE(q);
              CHECK(acc_pix.pull(p, q, md(pix, p, q)) <= 5.0);
              CHECK(acc_in.pull(p, q, md(buck, p, q)) <= 5.0);
              CHECK(acc_out.pull(p, q,
                                 static_cast<double>(buck.out(p, q))) <= 5.0);
            }
        }
}

TEST_CASE("bucket rejects non-pixel input and bad counts") {
  const auto s = twin_single_mode(1, 1, 1);
  JointMomentTable fake;
  fake.level = MomentLevel::SingleMode;
  CHECK_THROWS_AS(bucket_from_pixel(fake, 2), std::invalid_argument);
  CHECK_THROWS_AS(pixel_from_single(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(bucket_from_pixel(pixel_from_single(s, 1), 0),
                  std::invalid_argument);
}
