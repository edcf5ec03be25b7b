#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gi {

/// Philox4x32-10 counter-based generator. Every frame of a simulation gets
/// its own stream, keyed by (seed, frame index), so frame generation can be
/// partitioned across any number of workers with bit-identical output.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint64_t frame);

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return next_u64(); }

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  /// Uniform double in [0, 1), 53 random bits.
  double next_double();

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t frame_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
};

/// Bose-Einstein (geometric on {0,1,...}) sample of the given mean, by
/// inverse CDF.
long sample_bose_einstein(FrameRng& rng, double mean);

/// Exact binomial sample; Bernoulli loop for small n, popcount trick for
/// p = 1/2, rejection sampler otherwise.
long sample_binomial(FrameRng& rng, long n, double p);

/// Gaussian of the given mean and standard deviation truncated to [0, inf),
/// sampled by rejection.
double sample_truncated_normal(FrameRng& rng, double mean, double sd);

}  // namespace gi
