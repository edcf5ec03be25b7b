#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gi/protocols.hpp"

namespace gi {

enum class SweepAxis { Illumination, Resolution, Efficiency, Modes };
enum class SweepMode { Analytic, MonteCarlo, Both };

const char* to_string(SweepAxis a);

struct SweepSpec {
  SweepAxis axis = SweepAxis::Illumination;
  std::vector<double> values;  // nonempty, strictly increasing
  ExperimentParams base;
  std::vector<ProtocolKind> protocols;
  std::vector<SourceKind> sources;
  SweepMode mode = SweepMode::Analytic;
  std::uint64_t seed = 1;
  int replicas = 4;  // Monte-Carlo repetitions per row
  int workers = 1;
  std::string label;  // carried into the CSV (figure curve id)

  void validate() const;
};

struct SweepRow {
  std::string label;
  SweepAxis axis = SweepAxis::Illumination;
  double axis_value = 0;
  SourceKind source = SourceKind::TwinBeam;
  ProtocolKind protocol = ProtocolKind::Covariance;
  double analytic_snr_per_sqrt_frame = 0;
  double mc_snr_per_sqrt_frame = 0;  // NaN when not run
  double mc_se = 0;
  long frames = 0;
};

/// One row per (axis value, source, protocol); Monte-Carlo rows average the
/// empirical SNR over `replicas` seeded stacks.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// Stable plot-ready CSV: metadata comment lines, a fixed documented header,
/// locale-independent full-precision numbers.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& metadata);

/// Sweep specs encoding the parameter sets of the paper-shaped figures:
/// fig2, fig3a, fig3b, fig4, fig7, fig8.
std::vector<SweepSpec> figure_presets(const std::string& name);

}  // namespace gi
