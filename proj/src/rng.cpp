#include "gi/rng.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gi {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

std::array<std::uint32_t, 4> philox10(std::array<std::uint32_t, 4> ctr,
                                      std::array<std::uint32_t, 2> key) {
  for (int round = 0;; ++round) {
    philox_round(ctr, key);
    if (round == 9) break;
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

}  // namespace

FrameRng::FrameRng(std::uint64_t seed, std::uint64_t frame)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      frame_(frame) {}

void FrameRng::refill() {
  const std::array<std::uint32_t, 4> ctr = {
      static_cast<std::uint32_t>(block_),
      static_cast<std::uint32_t>(block_ >> 32),
      static_cast<std::uint32_t>(frame_),
      static_cast<std::uint32_t>(frame_ >> 32)};
  buf_ = philox10(ctr, key_);
  ++block_;
  pos_ = 0;
}

std::uint32_t FrameRng::next_u32() {
  if (pos_ >= 4) refill();
  return buf_[pos_++];
}

std::uint64_t FrameRng::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

double FrameRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

long sample_bose_einstein(FrameRng& rng, double mean) {
  if (!(mean > 0)) return 0;
  const double u = rng.next_double();
  if (u == 0.0) return 0;
  // P(N >= n) = q^n with q = mean/(1+mean); invert the CDF.
  const double log_q = std::log(mean) - std::log1p(mean);
  const double n = std::floor(std::log1p(-u) / log_q);
  return n < 0 ? 0 : static_cast<long>(n);
}

long sample_binomial(FrameRng& rng, long n, double p) {
  if (n <= 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  if (p == 0.5 && n >= 64) {
    long k = 0;
    long left = n;
    while (left >= 64) {
      k += __builtin_popcountll(rng.next_u64());
      left -= 64;
    }
    if (left > 0)
      k += __builtin_popcountll(rng.next_u64() >> (64 - left));
    return k;
  }
  if (n < 64) {
    long k = 0;
    for (long i = 0; i < n; ++i)
      if (rng.next_double() < p) ++k;
    return k;
  }
  std::binomial_distribution<long> dist(n, p);
  return dist(rng);
}

double sample_truncated_normal(FrameRng& rng, double mean, double sd) {
  if (!(sd > 0)) return mean;
  for (;;) {
    double u1 = rng.next_double();
    if (u1 == 0.0) u1 = 0x1.0p-53;
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double z = r * std::cos(2.0 * M_PI * u2);
    const double x = mean + sd * z;
    if (x >= 0.0) return x;
  }
}

}  // namespace gi
