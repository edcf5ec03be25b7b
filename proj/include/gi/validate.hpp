#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gi/simulator.hpp"

namespace gi {

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0;
  double expected = 0;
  double tolerance = 0;  // interpretation depends on the check (see detail)
  std::string detail;
};

struct ValidationReport {
  std::string suite;
  bool pass = true;
  double elapsed_seconds = 0;
  std::vector<CheckResult> checks;

  void add(CheckResult c);
};

/// Pipeline (moments -> composition -> protocols) against the transcribed
/// closed forms at eta=1, grid mu x M x R, 1e-9 relative.
ValidationReport validate_table1();

/// Analytic single-mode / pixel / bucket moments against the frame simulator
/// within 5 standard errors.
ValidationReport validate_oracle(std::uint64_t seed, int workers);

/// Fitted log-log SNR slopes in the low-illumination asymptotic window
/// against the scaling exponents, +-0.1.
ValidationReport validate_asymptotics();

/// Pump-instability covariance: simulated Cov_out against
/// eta^2 M^2 V(mu) R before frame normalization and against 0 after,
/// within 5 standard errors.
ValidationReport validate_pump(std::uint64_t seed, int workers);

/// suite in {table1, oracle, asymptotics, pump, all}.
std::vector<ValidationReport> run_suites(const std::string& suite,
                                         std::uint64_t seed, int workers);

std::string reports_to_json(const std::vector<ValidationReport>& reports);

// Reusable measurement helpers (also driven by the acceptance tests).

/// Mean plug-in covariance between the bucket and the T=0 reference cells,
/// with a delete-one-frame jackknife standard error.
std::pair<double, double> bucket_out_covariance(const FrameStack& stack,
                                                const MaskSpec& mask);

/// Least-squares log-log slope of analytic SNR vs illumination over a
/// log-spaced grid in [lo, hi].
double fitted_loglog_slope(ProtocolKind kind, SourceKind source, double lo,
                           double hi, long modes, long cells, double eta,
                           int points = 9);

}  // namespace gi
