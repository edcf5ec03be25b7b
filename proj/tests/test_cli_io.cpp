#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gi/config.hpp"
#include "gi/sweep.hpp"
#include "gi/validate.hpp"

using namespace gi;

TEST_CASE("config parsing: sections, comments, overrides, errors") {
  const Config cfg = Config::parse_string(R"(
# experiment
[source]
kind = thermal
mu = 0.5      ; inline comment
frames = 500

[statistics]
modes = 3
eta1 = 0.9
eta2 = 0.7
cells = 4
)");
  CHECK(cfg.has_section("source"));
  CHECK(cfg.get("source", "kind") == "thermal");
  CHECK(cfg.get_double("source", "mu") == doctest::Approx(0.5));
  CHECK(cfg.get_long_or("statistics", "cells", 1) == 4);
  CHECK(cfg.get_or("source", "missing", "x") == "x");
  CHECK_THROWS_AS(cfg.get("source", "missing"), std::runtime_error);

  CHECK_THROWS_AS(Config::parse_string("[source\nkind=twin"),
                  std::runtime_error);
  CHECK_THROWS_AS(Config::parse_string("loose line"), std::runtime_error);
  const Config bad = Config::parse_string("[source]\nmu = abc");
  CHECK_THROWS_AS(bad.get_double("source", "mu"), std::runtime_error);
}

TEST_CASE("params from raw statistics and from physical geometry") {
  const Config raw = Config::parse_string(R"(
[source]
kind = twin
mu = 0.2
frames = 4000
[statistics]
modes = 20000
eta1 = 0.42
eta2 = 0.42
cells = 100
)");
  const ExperimentParams p = params_from_config(raw);
  CHECK(p.source == SourceKind::TwinBeam);
  CHECK(p.modes_per_pixel == 20000);
  CHECK(p.illumination() == doctest::Approx(0.42 * 20000 * 0.2));

  const Config geo = Config::parse_string(R"(
[source]
kind = twin
mu = 0.2
frames = 4000
[geometry]
pixel_area = 57600
coherence_area = 14400
detection_time = 5e-9
coherence_time = 1e-12
object_area = 11232000
base_efficiency_1 = 0.8
base_efficiency_2 = 0.8
)");
  const ExperimentParams g = params_from_config(geo);
  CHECK(g.modes_per_pixel == 20000);
  CHECK(g.eta2 == doctest::Approx(0.8));
  CHECK(g.resolution_cells == 195);

  CHECK_THROWS_AS(params_from_config(Config::parse_string("[source]\nmu=1")),
                  std::runtime_error);
}

TEST_CASE("default mask mirrors R in-cells with an out region") {
  const Config raw = Config::parse_string(
      "[source]\nkind=twin\nmu=1\nframes=10\n[statistics]\ncells = 5\n");
  const ExperimentParams p = params_from_config(raw);
  const MaskSpec m = mask_from_config(raw, p);
  CHECK(m.in_cell_count() == 5);
  CHECK(m.out_cell_count() >= 2);
}

TEST_CASE("degenerate single-value sweep equals a direct snr call") {
  SweepSpec spec;
  spec.axis = SweepAxis::Illumination;
  spec.values = {5.0};
  spec.base.mu = 1;
  spec.base.modes_per_pixel = 1;
  spec.base.eta1 = spec.base.eta2 = 1;
  spec.base.resolution_cells = 10;
  spec.base.frames = 100;
  spec.protocols = {ProtocolKind::Covariance};
  spec.sources = {SourceKind::Thermal};
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 1);
  ExperimentParams p = spec.base;
  p.source = SourceKind::Thermal;
  p.mu = 5.0;
  CHECK(rows[0].analytic_snr_per_sqrt_frame ==
        doctest::Approx(snr(ProtocolKind::Covariance, p).snr_per_sqrt_frame));
  CHECK(std::isnan(rows[0].mc_snr_per_sqrt_frame));
}

TEST_CASE("sweep validation: ordering, emptiness, infeasible back-solve") {
  SweepSpec spec;
  spec.base.frames = 10;
  spec.protocols = {ProtocolKind::Covariance};
  spec.sources = {SourceKind::Thermal};
  spec.values = {};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec.values = {2.0, 1.0};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec.values = {1.0, 2.0};
  spec.base.eta2 = 0.0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("sweep CSV has the documented header and full-precision numbers") {
  SweepSpec spec;
  spec.axis = SweepAxis::Resolution;
  spec.values = {2, 8};
  spec.base.mu = 0.3;
  spec.base.frames = 100;
  spec.protocols = {ProtocolKind::NormalizedG2};
  spec.sources = {SourceKind::TwinBeam};
  const auto rows = run_sweep(spec);
  std::stringstream out;
  write_sweep_csv(out, rows, "meta");
  std::string line;
  std::getline(out, line);
  CHECK(line.rfind("# gistat", 0) == 0);
  std::getline(out, line);
  CHECK(line == "# meta");
  std::getline(out, line);
  CHECK(line ==
        "label,axis,value,source,protocol,snr_analytic_per_sqrt_frame,"
        "snr_mc_per_sqrt_frame,snr_mc_se,frames");
  std::getline(out, line);
  // full precision: the analytic number parses back to the exact double
  const auto last_comma_fields = [&line] {
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    return f;
  }();
  REQUIRE(last_comma_fields.size() == 9);
  CHECK(std::stod(last_comma_fields[5]) ==
        rows[0].analytic_snr_per_sqrt_frame);
}

TEST_CASE("figure presets encode the captions' parameters") {
  const auto fig2 = figure_presets("fig2");
  REQUIRE(fig2.size() == 1);
  CHECK(fig2[0].base.resolution_cells == 100);
  CHECK(fig2[0].base.modes_per_pixel == 1);
  CHECK(fig2[0].values.front() == doctest::Approx(1e-3));
  CHECK(fig2[0].values.back() == doctest::Approx(1e4));

  const auto fig7 = figure_presets("fig7");
  REQUIRE(fig7.size() == 1);
  CHECK(fig7[0].base.modes_per_pixel == 20000);
  CHECK(fig7[0].base.eta1 == doctest::Approx(0.42));
  CHECK(fig7[0].base.frames == 4000);
  CHECK(fig7[0].axis == SweepAxis::Resolution);

  CHECK(figure_presets("fig3a").size() == 3);
  CHECK(figure_presets("fig4").size() == 5);
  CHECK_THROWS_AS(figure_presets("fig99"), std::invalid_argument);
}

TEST_CASE("validation suites: table1 and asymptotics pass, json reports") {
  const auto t1 = validate_table1();
  CHECK(t1.pass);
  CHECK(t1.checks.size() == 8);
  const auto as = validate_asymptotics();
  CHECK(as.pass);
  const std::string json = reports_to_json({t1, as});
  CHECK(json.find("\"pass\": true") != std::string::npos);
  CHECK(json.find("table1") != std::string::npos);
  CHECK_THROWS_AS(run_suites("bogus", 1, 1), std::invalid_argument);
}

TEST_CASE("validation suites: oracle and pump agree with the simulator") {
  const auto orc = validate_oracle(0x0badcafe, 4);
  for (const auto& c : orc.checks) {
    CAPTURE(c.name);
    CAPTURE(c.measured);
    CHECK(c.pass);
  }
  const auto pump = validate_pump(0x0badcafe, 4);
  for (const auto& c : pump.checks) {
    CAPTURE(c.name);
    CAPTURE(c.measured);
    CHECK(c.pass);
  }
}
