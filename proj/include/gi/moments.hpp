#pragma once

#include "gi/real.hpp"

namespace gi {

/// Light source feeding the two arms of the imager.
enum class SourceKind { TwinBeam, Thermal };

const char* to_string(SourceKind s);

/// Raw joint photon-number moments <n1^p n2^q>, p+q <= 4, of one correlated
/// mode pair after independent losses eta1, eta2. m[0][0] == 1.
///
/// TwinBeam: the pair shares a single Bose-Einstein photon number n of mean
/// mu; each arm is an independent binomial thinning of n.
/// Thermal: a Bose-Einstein mode of mean 2*mu is split 50/50, then thinned,
/// so each arm still has per-mode mean eta_j * mu.
struct SingleModeJointMoments {
  real m[5][5]{};

  real operator()(int p, int q) const { return m[p][q]; }
};

SingleModeJointMoments twin_single_mode(double mu, double eta1, double eta2);
SingleModeJointMoments thermal_single_mode(double mu, double eta1, double eta2);
SingleModeJointMoments single_mode_moments(SourceKind source, double mu,
                                           double eta1, double eta2);

/// <delta^2(n1 - n2)> for balanced efficiency eta:
/// 2*eta*mu*(1 - eta) for twin beams (sub-shot-noise), 2*eta*mu for thermal
/// light (the shot-noise limit).
double difference_variance(SourceKind source, double mu, double eta);

}  // namespace gi
