// gistat: analytic SNR sweeps, Monte-Carlo frame simulation, ghost-image
// reconstruction and validation suites, from one config file plus flags.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gi/config.hpp"
#include "gi/stack_io.hpp"
#include "gi/sweep.hpp"
#include "gi/validate.hpp"
#include "gi/version.hpp"

namespace {

gi::ProtocolKind parse_protocol(const std::string& s) {
  if (s == "g2raw" || s == "G2") return gi::ProtocolKind::G2;
  if (s == "g2") return gi::ProtocolKind::NormalizedG2;
  if (s == "cov") return gi::ProtocolKind::Covariance;
  if (s == "var") return gi::ProtocolKind::DifferenceVariance;
  throw CLI::ValidationError("protocol must be one of g2raw,g2,cov,var: " + s);
}

gi::SweepMode parse_mode(const std::string& s) {
  if (s == "analytic") return gi::SweepMode::Analytic;
  if (s == "mc") return gi::SweepMode::MonteCarlo;
  if (s == "both") return gi::SweepMode::Both;
  throw CLI::ValidationError("mode must be analytic, mc or both: " + s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

struct CommonOpts {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  long frames = 0;
  int workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required) {
  auto* cfg = cmd->add_option("--config", o.config_path,
                              "experiment configuration file");
  if (config_required) cfg->required();
  cmd->add_option("--seed", o.seed, "RNG seed (overrides config)")
      ->each([&o](const std::string&) { o.seed_set = true; });
  cmd->add_option("--frames", o.frames,
                  "number of frames K (overrides config)");
  cmd->add_option("--workers", o.workers,
                  "worker threads; never changes results")
      ->check(CLI::PositiveNumber);
}

gi::ExperimentParams resolve_params(const gi::Config& cfg,
                                    const CommonOpts& o) {
  gi::ExperimentParams p = gi::params_from_config(cfg);
  if (o.frames > 0) p.frames = o.frames;
  p.validate();
  return p;
}

std::uint64_t resolve_seed(const gi::Config& cfg, const CommonOpts& o) {
  if (o.seed_set) return o.seed;
  if (auto s = gi::seed_from_config(cfg)) return *s;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ghost-imaging SNR statistics and Monte-Carlo simulator"};
  app.set_version_flag("--version", std::string(gi::kToolVersion));
  app.require_subcommand(1);

  // --- sweep ---------------------------------------------------------------
  auto* sweep_cmd =
      app.add_subcommand("sweep", "analytic and/or Monte-Carlo SNR sweeps");
  CommonOpts sweep_common;
  add_common(sweep_cmd, sweep_common, true);
  std::string axis_name = "illumination", values_arg, log_range_arg;
  std::string protocols_arg = "g2raw,g2,cov,var", sources_arg = "twin,thermal";
  std::string mode_arg = "analytic", sweep_out;
  int replicas = 4;
  sweep_cmd->add_option("--axis", axis_name,
                        "illumination | resolution | efficiency | modes");
  sweep_cmd->add_option("--values", values_arg, "comma-separated axis values");
  sweep_cmd->add_option("--log-range", log_range_arg,
                        "lo:hi:n log-spaced axis values");
  sweep_cmd->add_option("--protocols", protocols_arg, "subset of g2raw,g2,cov,var");
  sweep_cmd->add_option("--sources", sources_arg, "subset of twin,thermal");
  sweep_cmd->add_option("--mode", mode_arg, "analytic | mc | both");
  sweep_cmd->add_option("--replicas", replicas, "MC repetitions per row");
  sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();

  // --- figure --------------------------------------------------------------
  auto* fig_cmd = app.add_subcommand(
      "figure", "regenerate paper-shaped curve data (fig2..fig8)");
  std::string fig_name, fig_out, fig_mode = "analytic";
  CommonOpts fig_common;
  fig_cmd->add_option("name", fig_name, "fig2|fig3a|fig3b|fig4|fig7|fig8")
      ->required();
  fig_cmd->add_option("--out", fig_out, "output CSV path")->required();
  fig_cmd->add_option("--mode", fig_mode, "analytic | mc | both");
  fig_cmd->add_option("--seed", fig_common.seed, "RNG seed")
      ->each([&fig_common](const std::string&) { fig_common.seed_set = true; });
  fig_cmd->add_option("--workers", fig_common.workers, "worker threads");

  // --- simulate ------------------------------------------------------------
  auto* sim_cmd =
      app.add_subcommand("simulate", "generate a Monte-Carlo frame stack");
  CommonOpts sim_common;
  add_common(sim_cmd, sim_common, true);
  std::string sim_out, sim_csv;
  bool sim_normalize = false;
  sim_cmd->add_option("--out", sim_out, "output stack path")->required();
  sim_cmd->add_option("--csv", sim_csv, "also export the stack as CSV");
  sim_cmd->add_flag("--normalize", sim_normalize,
                    "normalize each frame by its reference-region mean");

  // --- reconstruct ---------------------------------------------------------
  auto* rec_cmd =
      app.add_subcommand("reconstruct", "ghost image from a frame stack");
  std::string rec_stack, rec_protocol = "cov", rec_out;
  bool rec_normalize = false;
  rec_cmd->add_option("--stack", rec_stack, "input stack path")->required();
  rec_cmd->add_option("--protocol", rec_protocol, "g2raw | g2 | cov | var");
  rec_cmd->add_flag("--normalize", rec_normalize,
                    "normalize frames before reconstructing");
  rec_cmd->add_option("--out", rec_out, "output image CSV")->required();

  // --- validate ------------------------------------------------------------
  auto* val_cmd =
      app.add_subcommand("validate", "run a validation suite, report JSON");
  std::string suite = "all", val_out;
  CommonOpts val_common;
  val_cmd->add_option("--suite", suite, "table1|oracle|asymptotics|pump|all");
  val_cmd->add_option("--out", val_out, "report path (default stdout)");
  val_cmd->add_option("--seed", val_common.seed, "RNG seed")
      ->each([&val_common](const std::string&) { val_common.seed_set = true; });
  val_cmd->add_option("--workers", val_common.workers, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) {
      const gi::Config cfg = gi::Config::parse_file(sweep_common.config_path);
      gi::SweepSpec spec;
      spec.base = resolve_params(cfg, sweep_common);
      spec.seed = resolve_seed(cfg, sweep_common);
      spec.mode = parse_mode(mode_arg);
      spec.replicas = replicas;
      spec.workers = sweep_common.workers;
      if (axis_name == "illumination")
        spec.axis = gi::SweepAxis::Illumination;
      else if (axis_name == "resolution")
        spec.axis = gi::SweepAxis::Resolution;
      else if (axis_name == "efficiency")
        spec.axis = gi::SweepAxis::Efficiency;
      else if (axis_name == "modes")
        spec.axis = gi::SweepAxis::Modes;
      else
        throw CLI::ValidationError("unknown axis: " + axis_name);

      if (!values_arg.empty()) {
        for (const auto& v : split(values_arg, ','))
          spec.values.push_back(std::stod(v));
      } else if (!log_range_arg.empty()) {
        const auto parts = split(log_range_arg, ':');
        if (parts.size() != 3)
          throw CLI::ValidationError("--log-range expects lo:hi:n");
        const double lo = std::stod(parts[0]), hi = std::stod(parts[1]);
        const int n = std::stoi(parts[2]);
        for (int i = 0; i < n; ++i)
          spec.values.push_back(std::pow(
              10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) *
                                         (n == 1 ? 0 : i / double(n - 1))));
      } else {
        throw CLI::ValidationError("sweep needs --values or --log-range");
      }
      for (const auto& s : split(protocols_arg, ','))
        spec.protocols.push_back(parse_protocol(s));
      for (const auto& s : split(sources_arg, ',')) {
        if (s == "twin")
          spec.sources.push_back(gi::SourceKind::TwinBeam);
        else if (s == "thermal")
          spec.sources.push_back(gi::SourceKind::Thermal);
        else
          throw CLI::ValidationError("unknown source: " + s);
      }
      const auto rows = gi::run_sweep(spec);
      auto f = open_out(sweep_out);
      std::ostringstream meta;
      meta << "sweep axis=" << gi::to_string(spec.axis)
           << " seed=" << spec.seed << " frames=" << spec.base.frames
           << " mode=" << mode_arg;
      gi::write_sweep_csv(f, rows, meta.str());
      std::cout << rows.size() << " rows -> " << sweep_out << "\n";
    } else if (*fig_cmd) {
      std::vector<gi::SweepRow> rows;
      for (gi::SweepSpec spec : gi::figure_presets(fig_name)) {
        spec.mode = parse_mode(fig_mode);
        if (fig_common.seed_set) spec.seed = fig_common.seed;
        spec.workers = fig_common.workers;
        auto r = gi::run_sweep(spec);
        rows.insert(rows.end(), r.begin(), r.end());
      }
      auto f = open_out(fig_out);
      gi::write_sweep_csv(f, rows, "figure preset " + fig_name);
      std::cout << rows.size() << " rows -> " << fig_out << "\n";
    } else if (*sim_cmd) {
      const gi::Config cfg = gi::Config::parse_file(sim_common.config_path);
      const gi::ExperimentParams params = resolve_params(cfg, sim_common);
      const gi::MaskSpec mask = gi::mask_from_config(cfg, params);
      const std::uint64_t seed = resolve_seed(cfg, sim_common);
      gi::FrameStack st =
          gi::sample_stack(params, mask, seed, sim_common.workers);
      if (sim_normalize) st = gi::normalize_frames(st);
      for (const auto& w : st.warnings) std::cerr << "warning: " << w << "\n";
      gi::write_stack_file(sim_out, st);
      std::cout << "stack: " << st.frames << " frames, " << st.cell_count()
                << " cells, seed " << seed << " -> " << sim_out << "\n";
      if (!sim_csv.empty()) {
        auto f = open_out(sim_csv);
        gi::export_stack_csv(f, st);
      }
    } else if (*rec_cmd) {
      gi::FrameStack st = gi::read_stack_file(rec_stack);
      if (rec_normalize) st = gi::normalize_frames(st);
      const gi::ProtocolKind kind = parse_protocol(rec_protocol);
      const gi::GhostImage img = gi::reconstruct(st, kind, st.mask);
      const gi::SnrReport rep = gi::empirical_snr(img, st.mask);
      auto f = open_out(rec_out);
      f << "# gistat " << gi::kToolVersion << " ghost image; protocol="
        << gi::to_string(kind) << " frames=" << img.frames_used
        << " seed=" << st.seed << "\n";
      f << "# empirical snr=" << rep.snr << " contrast=" << rep.contrast
        << " noise=" << rep.noise << "\n";
      f << "row,col,transmission,value,flagged\n";
      f.precision(17);
      for (int r = 0; r < img.rows; ++r)
        for (int c = 0; c < img.cols; ++c) {
          const int cell = r * img.cols + c;
          f << r << ',' << c << ','
            << static_cast<int>(st.mask.transmission[cell]) << ','
            << img.values[cell] << ',' << static_cast<int>(img.flags[cell])
            << "\n";
        }
      std::cout << "protocol " << gi::to_string(kind)
                << ": empirical snr = " << rep.snr << " (snr/sqrt(K) = "
                << rep.snr / std::sqrt(double(img.frames_used)) << ") -> "
                << rec_out << "\n";
    } else if (*val_cmd) {
      const std::uint64_t seed = val_common.seed_set ? val_common.seed : 20260810;
      const auto reports =
          gi::run_suites(suite, seed, val_common.workers);
      const std::string json = gi::reports_to_json(reports);
      if (val_out.empty()) {
        std::cout << json << "\n";
      } else {
        auto f = open_out(val_out);
        f << json << "\n";
      }
      bool pass = true;
      for (const auto& r : reports) {
        pass = pass && r.pass;
        std::cerr << "suite " << r.suite << ": "
                  << (r.pass ? "PASS" : "FAIL") << " ("
                  << r.checks.size() << " checks, " << r.elapsed_seconds
                  << " s)\n";
      }
      return pass ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
