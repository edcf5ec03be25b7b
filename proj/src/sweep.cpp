#include "gi/sweep.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "gi/simulator.hpp"
#include "gi/version.hpp"

namespace gi {

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::Illumination: return "illumination";
    case SweepAxis::Resolution: return "resolution";
    case SweepAxis::Efficiency: return "efficiency";
    case SweepAxis::Modes: return "modes";
  }
  return "?";
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: no axis values");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1]))
      throw std::invalid_argument("sweep: values must be strictly increasing");
  if (protocols.empty()) throw std::invalid_argument("sweep: no protocols");
  if (sources.empty()) throw std::invalid_argument("sweep: no sources");
  if (replicas < 1) throw std::invalid_argument("sweep: replicas >= 1");
}

namespace {

ExperimentParams apply_axis(const SweepSpec& spec, double value,
                            SourceKind source) {
  ExperimentParams p = spec.base;
  p.source = source;
  switch (spec.axis) {
    case SweepAxis::Illumination: {
      const double denom =
          p.eta2 * static_cast<double>(p.modes_per_pixel);
      if (!(denom > 0))
        throw std::invalid_argument(
            "sweep: cannot back-solve mu, eta2 * M is zero");
      p.mu = value / denom;
      break;
    }
    case SweepAxis::Resolution:
      p.resolution_cells = std::lround(value);
      break;
    case SweepAxis::Efficiency:
      p.eta1 = p.eta2 = value;
      break;
    case SweepAxis::Modes:
      p.modes_per_pixel = std::lround(value);
      break;
  }
  p.validate();
  return p;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  std::uint64_t seed = spec.seed;
  for (double v : spec.values)
    for (SourceKind src : spec.sources) {
      const ExperimentParams p = apply_axis(spec, v, src);
      for (ProtocolKind kind : spec.protocols) {
        SweepRow row;
        row.label = spec.label;
        row.axis = spec.axis;
        row.axis_value = v;
        row.source = src;
        row.protocol = kind;
        row.frames = p.frames;
        row.analytic_snr_per_sqrt_frame = snr(kind, p).snr_per_sqrt_frame;
        row.mc_snr_per_sqrt_frame = std::numeric_limits<double>::quiet_NaN();
        if (spec.mode != SweepMode::Analytic) {
          const int r = static_cast<int>(p.resolution_cells);
          const MaskSpec mask = MaskSpec::blocks(r, std::max(r, 2));
          const double sqrt_k = std::sqrt(static_cast<double>(p.frames));
          double sum = 0, sumsq = 0;
          for (int rep = 0; rep < spec.replicas; ++rep) {
            const FrameStack st = sample_stack(p, mask, seed++, spec.workers);
            const GhostImage img = reconstruct(st, kind, mask);
            const double s = empirical_snr(img, mask).snr / sqrt_k;
            sum += s;
            sumsq += s * s;
          }
          const double mean = sum / spec.replicas;
          row.mc_snr_per_sqrt_frame = mean;
          if (spec.replicas > 1) {
            const double var =
                std::max(sumsq / spec.replicas - mean * mean, 0.0);
            row.mc_se = std::sqrt(var / (spec.replicas - 1));
          }
        }
        rows.push_back(row);
      }
    }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& metadata) {
  out << "# gistat " << kToolVersion << "\n";
  if (!metadata.empty()) out << "# " << metadata << "\n";
  out << "label,axis,value,source,protocol,snr_analytic_per_sqrt_frame,"
         "snr_mc_per_sqrt_frame,snr_mc_se,frames\n";
  char buf[64];
  auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  for (const auto& r : rows) {
    out << r.label << ',' << to_string(r.axis) << ',' << num(r.axis_value)
        << ',' << to_string(r.source) << ',' << to_string(r.protocol) << ','
        << num(r.analytic_snr_per_sqrt_frame) << ','
        << num(r.mc_snr_per_sqrt_frame) << ',' << num(r.mc_se) << ','
        << r.frames << "\n";
  }
}

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < n; ++i)
    v[i] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
  return v;
}

std::vector<double> resolution_grid() {
  return {4,  6,  8,  12, 16,  24,  32,  48,  64,
          80, 96, 112, 128, 144, 160, 180, 200};
}

const std::vector<ProtocolKind> kAllProtocols = {
    ProtocolKind::G2, ProtocolKind::NormalizedG2, ProtocolKind::Covariance,
    ProtocolKind::DifferenceVariance};

}  // namespace

std::vector<SweepSpec> figure_presets(const std::string& name) {
  std::vector<SweepSpec> specs;
  auto base_spec = [] {
    SweepSpec s;
    s.axis = SweepAxis::Illumination;
    s.values = log_spaced(1e-3, 1e4, 57);
    s.base.mu = 1;
    s.base.modes_per_pixel = 1;
    s.base.eta1 = s.base.eta2 = 1;
    s.base.resolution_cells = 100;
    s.base.frames = 1000;
    s.sources = {SourceKind::TwinBeam, SourceKind::Thermal};
    s.protocols = kAllProtocols;
    return s;
  };

  if (name == "fig2") {
    specs.push_back(base_spec());
    specs.back().label = "fig2";
  } else if (name == "fig3a") {
    for (double eta : {1.0, 0.5, 0.1}) {
      SweepSpec s = base_spec();
      s.protocols = {ProtocolKind::Covariance};
      s.base.eta1 = s.base.eta2 = eta;
      s.label = "eta=" + std::to_string(eta).substr(0, 3);
      specs.push_back(s);
    }
  } else if (name == "fig3b") {
    for (double eta2 : {0.9, 0.5, 0.1}) {
      SweepSpec s = base_spec();
      s.protocols = {ProtocolKind::Covariance};
      s.base.eta1 = 1.0;
      s.base.eta2 = eta2;
      s.label = "eta2=" + std::to_string(eta2).substr(0, 3);
      specs.push_back(s);
    }
  } else if (name == "fig4") {
    for (long m : {1L, 10L, 100L, 1000L, 10000L}) {
      SweepSpec s = base_spec();
      s.protocols = {ProtocolKind::Covariance};
      s.base.modes_per_pixel = m;
      s.label = "M=" + std::to_string(m);
      specs.push_back(s);
    }
  } else if (name == "fig7") {
    SweepSpec s;
    s.axis = SweepAxis::Resolution;
    s.values = resolution_grid();
    s.base.source = SourceKind::TwinBeam;
    s.base.mu = 0.2;
    s.base.modes_per_pixel = 20000;
    s.base.eta1 = s.base.eta2 = 0.42;
    s.base.frames = 4000;
    s.sources = {SourceKind::TwinBeam};
    s.protocols = kAllProtocols;
    s.label = "fig7";
    specs.push_back(s);
  } else if (name == "fig8") {
    SweepSpec s;
    s.axis = SweepAxis::Resolution;
    s.values = resolution_grid();
    s.base.source = SourceKind::Thermal;
    s.base.mu = 1e4;
    s.base.modes_per_pixel = 1;
    s.base.eta1 = s.base.eta2 = 1;
    s.base.frames = 5000;
    s.sources = {SourceKind::Thermal};
    s.protocols = kAllProtocols;
    s.label = "fig8";
    specs.push_back(s);
  } else {
    throw std::invalid_argument("unknown figure preset: " + name);
  }
  return specs;
}

}  // namespace gi
