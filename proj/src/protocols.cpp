#include "gi/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace gi {

namespace {

struct ContrastStats {
  real contrast = 0;      // <S_in> - <S_out>
  real var_per_frame = 0; // K * Var(S_in - S_out)
};

// W = X(Y - Z): bucket X shared, Y the in pixel, Z an independent out pixel.
ContrastStats g2_raw_stats(const JointMomentTable& b) {
  ContrastStats s;
  s.contrast = b(1, 1) - b.out(1, 1);
  const real w2 =
      b(2, 2) - 2 * b(2, 1) * b(0, 1) + b(2, 0) * b(0, 2);
  s.var_per_frame = w2 - s.contrast * s.contrast;
  return s;
}

ContrastStats covariance_stats(const JointMomentTable& b) {
  const CentralMoments ci = central_views(b);
  const CentralMoments co = central_views_out(b);
  ContrastStats s;
  s.contrast = ci.cov - co.cov;
  // Cov(dX dY, dX dZ) vanishes, so the joint form equals the sum of the two
  // per-region variances.
  s.var_per_frame = (ci.c22 - ci.cov * ci.cov) + (co.c22 - co.cov * co.cov);
  return s;
}

// First-order propagation of g = G/(A B) through the three sample means,
// with all pairwise covariances; var(...) are per-frame quantities.
real g2_delta_variance(const real m[5][5]) {
  const real A = m[1][0], B = m[0][1], G = m[1][1];
  if (A * B == 0)
    throw std::domain_error("g2: zero denominator mean in propagation");
  const real dG = 1 / (A * B);
  const real dA = -G / (A * A * B);
  const real dB = -G / (A * B * B);
  const real vG = m[2][2] - G * G;
  const real vA = m[2][0] - A * A;
  const real vB = m[0][2] - B * B;
  const real cGA = m[2][1] - G * A;
  const real cGB = m[1][2] - G * B;
  const real cAB = m[1][1] - A * B;
  return dG * dG * vG + dA * dA * vA + dB * dB * vB + 2 * dG * dA * cGA +
         2 * dG * dB * cGB + 2 * dA * dB * cAB;
}

ContrastStats normalized_g2_stats(const JointMomentTable& b) {
  const real denom = b(1, 0) * b(0, 1);
  if (denom == 0)
    throw std::domain_error("g2: <bucket><N2> is zero, estimator undefined");
  ContrastStats s;
  s.contrast = (b(1, 1) - b.out(1, 1)) / denom;
  s.var_per_frame = g2_delta_variance(b.m) + g2_delta_variance(b.out_m);
  return s;
}

// S is the (1/K-normalized) sample variance of D = X - Y resp. X - Z; the
// per-frame core of S_in - S_out is W = (dX-dY)^2 - (dX-dZ)^2 with X shared.
ContrastStats difference_variance_stats(const JointMomentTable& b, long frames,
                                        bool exact_correction) {
  const CentralMoments ci = central_views(b);
  const CentralMoments co = central_views_out(b);
  ContrastStats s;
  s.contrast = ci.var_diff() - co.var_diff();  // = -2 cov_in
  const real mu4_in = ci.mu4_diff();
  const real mu4_out = co.c40 + 6 * co.var1 * co.var2 + co.c04;
  const real cross = ci.c40 + ci.c22 - 2 * ci.c31 +
                     co.var2 * ci.var_diff();
  real quartic = s.contrast * s.contrast;
  if (exact_correction && frames >= 2) {
    const real k = static_cast<real>(frames);
    quartic *= (k - 3) / (k - 1);
  }
  s.var_per_frame = mu4_in - 2 * cross + mu4_out - quartic;
  return s;
}

ContrastStats contrast_stats(ProtocolKind kind, const JointMomentTable& b,
                             long frames, const ProtocolOptions& opts) {
  switch (kind) {
    case ProtocolKind::G2: return g2_raw_stats(b);
    case ProtocolKind::NormalizedG2: return normalized_g2_stats(b);
    case ProtocolKind::Covariance: return covariance_stats(b);
    case ProtocolKind::DifferenceVariance:
      return difference_variance_stats(b, frames,
                                       opts.exact_variance_correction);
  }
  throw std::invalid_argument("unknown protocol");
}

}  // namespace

const char* to_string(ProtocolKind k) {
  switch (k) {
    case ProtocolKind::G2: return "g2raw";
    case ProtocolKind::NormalizedG2: return "g2";
    case ProtocolKind::Covariance: return "cov";
    case ProtocolKind::DifferenceVariance: return "var";
  }
  return "?";
}

JointMomentTable bucket_table(const ExperimentParams& params) {
  params.validate();
  const SingleModeJointMoments s =
      single_mode_moments(params.source, params.mu, params.eta1, params.eta2);
  return bucket_from_pixel(pixel_from_single(s, params.modes_per_pixel),
                           params.resolution_cells);
}

std::pair<double, double> protocol_mean(ProtocolKind kind,
                                        const ExperimentParams& params) {
  const JointMomentTable b = bucket_table(params);
  const CentralMoments ci = central_views(b);
  const CentralMoments co = central_views_out(b);
  switch (kind) {
    case ProtocolKind::G2:
      return {static_cast<double>(b(1, 1)), static_cast<double>(b.out(1, 1))};
    case ProtocolKind::NormalizedG2: {
      const real denom = b(1, 0) * b(0, 1);
      if (denom == 0)
        throw std::domain_error("g2: <bucket><N2> is zero, mean undefined");
      return {static_cast<double>(b(1, 1) / denom),
              static_cast<double>(b.out(1, 1) / denom)};
    }
    case ProtocolKind::Covariance: {
      const real k = static_cast<real>(params.frames);
      const real unbiased = (k - 1) / k;
      return {static_cast<double>(unbiased * ci.cov),
              static_cast<double>(unbiased * co.cov)};
    }
    case ProtocolKind::DifferenceVariance:
      return {static_cast<double>(ci.var_diff()),
              static_cast<double>(co.var_diff())};
  }
  throw std::invalid_argument("unknown protocol");
}

double protocol_variance(ProtocolKind kind, const ExperimentParams& params,
                         const ProtocolOptions& opts) {
  const JointMomentTable b = bucket_table(params);
  const ContrastStats s = contrast_stats(kind, b, params.frames, opts);
  return static_cast<double>(s.var_per_frame /
                             static_cast<real>(params.frames));
}

SnrResult snr(ProtocolKind kind, const ExperimentParams& params,
              const ProtocolOptions& opts) {
  const JointMomentTable b = bucket_table(params);
  const ContrastStats s = contrast_stats(kind, b, params.frames, opts);
  const CentralMoments ci = central_views(b);

  SnrResult r;
  r.contrast = static_cast<double>(s.contrast);
  const real k = static_cast<real>(params.frames);
  const real var_k = s.var_per_frame / k;
  r.noise = static_cast<double>(std::sqrt(std::max<real>(var_k, 0)));
  if (r.noise == 0 && r.contrast == 0) {
    r.degenerate = true;
    r.snr = 0;
    r.snr_per_sqrt_frame = 0;
  } else {
    r.snr = static_cast<double>(std::fabs(s.contrast) /
                                std::sqrt(std::max<real>(var_k, 0)));
    r.snr_per_sqrt_frame = static_cast<double>(
        std::fabs(s.contrast) / std::sqrt(std::max<real>(s.var_per_frame, 0)));
  }
  r.intermediates = {
      {"bucket_mean", static_cast<double>(ci.mean1)},
      {"pixel_mean", static_cast<double>(ci.mean2)},
      {"bucket_var", static_cast<double>(ci.var1)},
      {"pixel_var", static_cast<double>(ci.var2)},
      {"cov_in", static_cast<double>(ci.cov)},
      {"var_per_frame", static_cast<double>(s.var_per_frame)},
      {"illumination", params.illumination()},
      {"excess_noise", params.excess_noise()},
  };
  return r;
}

double table1_closed_form(ProtocolKind kind, SourceKind source, double mu_,
                          double modes, double cells) {
  if (!(mu_ > 0) || !(modes >= 1) || !(cells >= 1))
    throw std::invalid_argument("table1_closed_form: bad domain");
  const real u = mu_, M = modes, R = cells;
  const bool tw = source == SourceKind::TwinBeam;
  real num = 0, den = 0;
  switch (kind) {
    case ProtocolKind::G2:
      if (tw) {
        num = std::sqrt(M * u * (1 + u));
        den = 1 + u * (6 + M + 4 * M * R) +
              u * u * (6 + M + 6 * M * R + 2 * M * M * R * R);
      } else {
        num = std::sqrt(M) * u;
        den = 1 + 2 * M * R + 2 * u * (2 + 3 * M * R + M * M * R * R) +
              u * u * (6 + M + 6 * M * R + 2 * M * M * R * R);
      }
      break;
    case ProtocolKind::NormalizedG2:
      if (tw) {
        num = std::sqrt(M * R * u * (1 + u));
        den = 1 + u * R * (2 + M + 2 * M * R) +
              u * u * (-1 + (3 + M) * R + 2 * M * R * R);
      } else {
        num = std::sqrt(M * R) * u;
        den = -u * (1 + u) + (1 + 3 * u + (3 + M) * u * u) * R +
              2 * M * (1 + u) * (1 + u) * R * R;
      }
      break;
    case ProtocolKind::Covariance:
      if (tw) {
        num = std::sqrt(M * u * (1 + u));
        den = 1 + u * (6 + M + 2 * M * R) + u * u * (6 + M + 2 * M * R);
      } else {
        num = std::sqrt(M) * u;
        den = 1 + 2 * M * R + 4 * u * (1 + M * R) +
              u * u * (6 + M + 2 * M * R);
      }
      break;
    case ProtocolKind::DifferenceVariance:
      if (tw) {
        num = std::sqrt(2 * M * u * (1 + u));
        den = 1 + u * (6 + 4 * M * R) + u * u * (6 + 4 * M * R);
      } else {
        num = std::sqrt(2 * M) * u * std::sqrt(u);
        den = 1 + u * (7 + M * (2 + 4 * R)) + 8 * u * u * (1 + M * R) +
              u * u * u * (6 + 4 * M * R);
      }
      break;
  }
  return static_cast<double>(num / std::sqrt(den));
}

std::pair<double, double> pump_instability_cov(double mu_mean,
                                               double mu_variance, double eta,
                                               double modes, double cells) {
  if (!(mu_mean > 0)) throw std::invalid_argument("pump cov: mu_mean <= 0");
  if (!(mu_variance >= 0))
    throw std::invalid_argument("pump cov: V(mu) must be >= 0");
  if (!(eta >= 0 && eta <= 1))
    throw std::invalid_argument("pump cov: eta outside [0,1]");
  if (!(modes >= 1) || !(cells >= 1))
    throw std::invalid_argument("pump cov: M and R must be >= 1");
  const real e2 = static_cast<real>(eta) * eta;
  const real M = modes, R = cells, u = mu_mean, V = mu_variance;
  const real in = e2 * M * (u * (1 + u) + V * (1 + R * M));
  const real out = e2 * M * M * V * R;
  return {static_cast<double>(in), static_cast<double>(out)};
}

double asymptotic_exponent(ProtocolKind kind, SourceKind source) {
  if (source == SourceKind::TwinBeam) return 0.5;
  return kind == ProtocolKind::DifferenceVariance ? 1.5 : 1.0;
}

}  // namespace gi
