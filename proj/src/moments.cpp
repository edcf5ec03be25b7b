#include "gi/moments.hpp"

#include <stdexcept>
#include <string>

namespace gi {

namespace {

void check_domain(double mu, double eta1, double eta2) {
  if (!(mu > 0.0))
    throw std::invalid_argument("single-mode moments: mu must be > 0, got " +
                                std::to_string(mu));
  for (double e : {eta1, eta2})
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument(
          "single-mode moments: efficiency outside [0,1]: " +
          std::to_string(e));
}

// <n^k> of a Bose-Einstein mode of mean mu thinned with efficiency e.
real marginal(real mu, real e, int k) {
  const real em = e * mu;
  switch (k) {
    case 0: return 1.0L;
    case 1: return em;
    case 2: return em * (1 + 2 * em);
    case 3: return em * (1 + 6 * em + 6 * em * em);
    case 4: return em * (1 + em * (14 + em * (36 + 24 * em)));
  }
  return 0.0L;
}

void fill_marginals(SingleModeJointMoments& t, real mu, real e1, real e2) {
  for (int k = 0; k <= 4; ++k) {
    t.m[k][0] = marginal(mu, e1, k);
    t.m[0][k] = marginal(mu, e2, k);
  }
}

}  // namespace

const char* to_string(SourceKind s) {
  return s == SourceKind::TwinBeam ? "twin" : "thermal";
}

SingleModeJointMoments twin_single_mode(double mu_, double eta1, double eta2) {
  check_domain(mu_, eta1, eta2);
  const real mu = mu_, e1 = eta1, e2 = eta2;
  SingleModeJointMoments t;
  fill_marginals(t, mu, e1, e2);

  t.m[1][1] = mu * (1 + 2 * mu) * e1 * e2;
  // <n1^2 n2>; <n1 n2^2> follows by exchanging the arms.
  auto m21 = [mu](real ea, real eb) {
    return mu * ea * eb * (1 + mu * (2 + 4 * ea) + 6 * mu * mu * ea);
  };
  t.m[2][1] = m21(e1, e2);
  t.m[1][2] = m21(e2, e1);
  t.m[2][2] = mu * e1 * e2 *
              (1 + 2 * mu * (1 + 2 * e1 + 2 * e2 + 2 * e1 * e2) +
               6 * mu * mu * (e1 + e2 + 4 * e1 * e2) +
               24 * mu * mu * mu * e1 * e2);
  auto m31 = [mu](real ea, real eb) {
    return mu * ea * eb *
           (1 + 2 * mu * (1 + 6 * ea) + 18 * mu * mu * ea * (1 + ea) +
            24 * mu * mu * mu * ea * ea);
  };
  t.m[3][1] = m31(e1, e2);
  t.m[1][3] = m31(e2, e1);
  return t;
}

SingleModeJointMoments thermal_single_mode(double mu_, double eta1,
                                           double eta2) {
  check_domain(mu_, eta1, eta2);
  const real mu = mu_, e1 = eta1, e2 = eta2;
  SingleModeJointMoments t;
  // Each arm of split thermal light is itself thermal with mean eta_j * mu.
  fill_marginals(t, mu, e1, e2);

  const real c = 2 * mu * mu * e1 * e2;
  t.m[1][1] = c;
  auto m21 = [mu, c](real ea) { return c * (1 + 3 * mu * ea); };
  t.m[2][1] = m21(e1);
  t.m[1][2] = m21(e2);
  t.m[2][2] = c * (1 + 3 * mu * (e1 + e2) + 12 * mu * mu * e1 * e2);
  // Leading factor 2*mu^2, not the printed 2*mu: the split-thermal model
  // (joint falling-factorial moment (p+q)! mu^(p+q) eta1^p eta2^q) fixes it,
  // and the sampling oracle agrees only with this form.
  auto m31 = [mu, c](real ea) {
    return c * (1 + 9 * mu * ea + 12 * mu * mu * ea * ea);
  };
  t.m[3][1] = m31(e1);
  t.m[1][3] = m31(e2);
  return t;
}

SingleModeJointMoments single_mode_moments(SourceKind source, double mu,
                                           double eta1, double eta2) {
  return source == SourceKind::TwinBeam ? twin_single_mode(mu, eta1, eta2)
                                        : thermal_single_mode(mu, eta1, eta2);
}

double difference_variance(SourceKind source, double mu, double eta) {
  if (!(mu > 0.0))
    throw std::invalid_argument("difference_variance: mu must be > 0");
  if (!(eta >= 0.0 && eta <= 1.0))
    throw std::invalid_argument("difference_variance: eta outside [0,1]");
  return source == SourceKind::TwinBeam ? 2.0 * eta * mu * (1.0 - eta)
                                        : 2.0 * eta * mu;
}

}  // namespace gi
