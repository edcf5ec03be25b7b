#include "oracle.hpp"

#include <cmath>

namespace oracle {

long be_sample(Rng& rng, double mean) {
  if (!(mean > 0)) return 0;
  const double u = rng.uniform();
  if (u == 0.0) return 0;
  const double log_q = std::log(mean / (1.0 + mean));
  const double n = std::floor(std::log1p(-u) / log_q);
  return n < 0 ? 0 : static_cast<long>(n);
}

long binomial_sample(Rng& rng, long n, double p) {
  if (n <= 0 || p <= 0) return 0;
  if (p >= 1) return n;
  long k = 0;
  for (long i = 0; i < n; ++i)
    if (rng.uniform() < p) ++k;
  return k;
}

std::pair<long, long> twin_pair(Rng& rng, double mu, double eta1,
                                double eta2) {
  const long n = be_sample(rng, mu);
  return {binomial_sample(rng, n, eta1), binomial_sample(rng, n, eta2)};
}

std::pair<long, long> thermal_pair(Rng& rng, double mu, double eta1,
                                   double eta2) {
  const long m = be_sample(rng, 2.0 * mu);
  const long a = binomial_sample(rng, m, 0.5);
  return {binomial_sample(rng, a, eta1), binomial_sample(rng, m - a, eta2)};
}

void MomentAccumulator::add(double x, double y) {
  long double xp[5], yq[5];
  xp[0] = yq[0] = 1.0L;
  for (int i = 1; i <= 4; ++i) {
    xp[i] = xp[i - 1] * x;
    yq[i] = yq[i - 1] * y;
  }
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      const long double v = xp[p] * yq[q];
      sum[p][q] += v;
      sumsq[p][q] += v * v;
    }
  ++n;
}

double MomentAccumulator::mean(int p, int q) const {
  return static_cast<double>(sum[p][q] / n);
}

double MomentAccumulator::se(int p, int q) const {
  const long double m = sum[p][q] / n;
  const long double var = sumsq[p][q] / n - m * m;
  return std::sqrt(std::max<double>(static_cast<double>(var), 0.0) /
                   (n - 1));
}

double MomentAccumulator::pull(int p, int q, double analytic) const {
  const double s = se(p, q);
  const double dev = std::fabs(mean(p, q) - analytic);
  if (s == 0) return dev == 0 ? 0 : 1e99;
  return dev / s;
}

std::pair<double, double> VarianceAccumulator::variance_with_se() const {
  const long n = static_cast<long>(values.size());
  long double s1 = 0, s2 = 0;
  for (double v : values) {
    s1 += v;
    s2 += static_cast<long double>(v) * v;
  }
  const long double mean = s1 / n;
  const double var = static_cast<double>(s2 / n - mean * mean);

  // Delete-one jackknife over the biased sample variance.
  long double jsum = 0, jsumsq = 0;
  const long double m = n - 1;
  for (double v : values) {
    const long double mu_j = (s1 - v) / m;
    const long double var_j = (s2 - static_cast<long double>(v) * v) / m -
                              mu_j * mu_j;
    jsum += var_j;
    jsumsq += var_j * var_j;
  }
  const long double jmean = jsum / n;
  const double se = std::sqrt(std::max<double>(
      static_cast<double>(m / n * (jsumsq - n * jmean * jmean)), 0.0));
  return {var, se};
}

}  // namespace oracle
