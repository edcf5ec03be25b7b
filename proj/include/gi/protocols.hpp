#pragma once

#include <map>
#include <string>
#include <utility>

#include "gi/composition.hpp"
#include "gi/geometry.hpp"

namespace gi {

/// Ghost-image reconstruction estimators:
///   G2                 S(x) = E[bucket * N2(x)]
///   NormalizedG2       S(x) = E[bucket * N2(x)] / (E[bucket] E[N2(x)])
///   Covariance         S(x) = E[bucket * N2(x)] - E[bucket] E[N2(x)]
///   DifferenceVariance S(x) = sample variance of bucket - N2(x)
enum class ProtocolKind { G2, NormalizedG2, Covariance, DifferenceVariance };

const char* to_string(ProtocolKind k);

struct SnrResult {
  double contrast = 0;  // <S_in> - <S_out>, signed
  double noise = 0;     // sqrt(Var(S_in - S_out)) at the given frame count
  double snr = 0;
  double snr_per_sqrt_frame = 0;
  bool degenerate = false;  // contrast and noise both zero; snr reported 0
  std::map<std::string, double> intermediates;
};

struct ProtocolOptions {
  // Apply the classical finite-K (K-3)/(K-1) factor to the subtracted
  // quartic terms of the DifferenceVariance estimator variance. The large-K
  // form (off) is what the closed-form SNR expressions assume.
  bool exact_variance_correction = false;
};

/// Bucket-level moment table for the given parameters
/// (single-mode -> M-mode pixel -> R-cell bucket).
JointMomentTable bucket_table(const ExperimentParams& params);

/// Expectation values (S_in, S_out) of the estimator. The Covariance mean
/// carries the (K-1)/K factor of the plug-in covariance estimator.
std::pair<double, double> protocol_mean(ProtocolKind kind,
                                        const ExperimentParams& params);

/// Variance of the contrast estimator S_in - S_out over K frames. The bucket
/// enters both S_in and S_out, so for G2 and DifferenceVariance its
/// common-mode fluctuation partially cancels and the joint variance is used;
/// for Covariance the joint and independent-region forms coincide exactly,
/// and for NormalizedG2 the per-region delta-method variances are summed.
double protocol_variance(ProtocolKind kind, const ExperimentParams& params,
                         const ProtocolOptions& opts = {});

/// |<S_in> - <S_out>| / sqrt(Var(S_in - S_out)), with the large-K contrast
/// for Covariance (the (K-1)/K factor cancels against the large-K variance).
SnrResult snr(ProtocolKind kind, const ExperimentParams& params,
              const ProtocolOptions& opts = {});

/// Literal lossless (eta=1) closed forms of SNR/sqrt(K).
double table1_closed_form(ProtocolKind kind, SourceKind source, double mu,
                          double modes, double cells);

/// Covariance of twin-beam light under pump instability, inside and outside
/// the mask:
///   Cov'_in  = eta^2 M [mu(1+mu) + V(mu)(1 + R M)]
///   Cov'_out = eta^2 M^2 V(mu) R
std::pair<double, double> pump_instability_cov(double mu_mean,
                                               double mu_variance, double eta,
                                               double modes, double cells);

/// Low-illumination scaling exponent of SNR in I: 1/2 for all twin-beam
/// protocols, 3/2 for thermal DifferenceVariance, 1 for the other thermal
/// protocols.
double asymptotic_exponent(ProtocolKind kind, SourceKind source);

}  // namespace gi
