#include <doctest.h>

#include <cmath>
#include <vector>

#include "gi/rng.hpp"

using namespace gi;

TEST_CASE("frame streams are deterministic and frame-separated") {
  FrameRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool all_equal_c = true, all_equal_d = true;
  for (int i = 0; i < 256; ++i) {
    const auto va = a.next_u32();
    CHECK(va == b.next_u32());
    if (va != c.next_u32()) all_equal_c = false;
    if (va != d.next_u32()) all_equal_d = false;
  }
  CHECK_FALSE(all_equal_c);
  CHECK_FALSE(all_equal_d);
}

TEST_CASE("uniform doubles look uniform") {
  FrameRng rng(1, 0);
  const int n = 200000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sumsq += u * u;
  }
  const double mean = sum / n;
  const double var = sumsq / n - mean * mean;
  CHECK(std::fabs(mean - 0.5) < 5.0 / std::sqrt(12.0 * n));
  CHECK(std::fabs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("Bose-Einstein sampler matches mean and variance") {
  FrameRng rng(2, 0);
  const double mu = 0.7;
  const long n = 300000;
  double s1 = 0, s2 = 0;
  for (long i = 0; i < n; ++i) {
    const double v = static_cast<double>(sample_bose_einstein(rng, mu));
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  const double se_mean = std::sqrt(mu * (1 + mu) / n);
  CHECK(std::fabs(mean - mu) < 5 * se_mean);
  CHECK(std::fabs(var - mu * (1 + mu)) < 0.05 * mu * (1 + mu));
  CHECK(sample_bose_einstein(rng, 0.0) == 0);
  CHECK(sample_bose_einstein(rng, -1.0) == 0);
}

TEST_CASE("binomial sampler: edge cases and both sampling paths") {
  FrameRng rng(3, 0);
  CHECK(sample_binomial(rng, 10, 0.0) == 0);
  CHECK(sample_binomial(rng, 10, 1.0) == 10);
  CHECK(sample_binomial(rng, 0, 0.5) == 0);

  for (const auto [n_trials, p] : std::vector<std::pair<long, double>>{
           {20, 0.3}, {100, 0.5}, {5000, 0.5}, {1000, 0.17}}) {
    const long reps = 40000;
    double s1 = 0, s2 = 0;
    for (long i = 0; i < reps; ++i) {
      const double v = static_cast<double>(sample_binomial(rng, n_trials, p));
      CHECK(v >= 0);
      CHECK(v <= n_trials);
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / reps;
    const double var = s2 / reps - mean * mean;
    const double m_true = n_trials * p;
    const double v_true = n_trials * p * (1 - p);
    CHECK(std::fabs(mean - m_true) < 5 * std::sqrt(v_true / reps));
    CHECK(std::fabs(var - v_true) < 0.08 * v_true);
  }
}

TEST_CASE("truncated normal stays nonnegative with the right first moments") {
  FrameRng rng(4, 0);
  const double mean = 0.2, sd = 0.056;  // truncation mass ~2e-4, negligible
  const long n = 100000;
  double s1 = 0, s2 = 0;
  for (long i = 0; i < n; ++i) {
    const double v = sample_truncated_normal(rng, mean, sd);
    CHECK(v >= 0.0);
    s1 += v;
    s2 += v * v;
  }
  const double m = s1 / n;
  const double var = s2 / n - m * m;
  CHECK(std::fabs(m - mean) < 5 * sd / std::sqrt(double(n)));
  CHECK(std::fabs(var - sd * sd) < 0.05 * sd * sd);
}
