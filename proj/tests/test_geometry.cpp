#include <doctest.h>

#include <cmath>

#include "gi/geometry.hpp"

using namespace gi;

namespace {

DetectionGeometry base_geom() {
  DetectionGeometry g;
  g.pixel_area = 1.0;
  g.coherence_area = 1.0;
  g.detection_time = 1.0;
  g.coherence_time = 1.0;
  g.object_area = 1.0;
  g.base_efficiency_1 = 1.0;
  g.base_efficiency_2 = 1.0;
  return g;
}

}  // namespace

TEST_CASE("matched pixel and coherence cell gives M=1, eta2=1") {
  const auto p = derive_params(base_geom(), SourceKind::TwinBeam, 1.0, 10);
  CHECK(p.modes_per_pixel == 1);
  CHECK(p.eta2 == doctest::Approx(1.0));
  CHECK(p.resolution_cells == 1);
}

TEST_CASE("PDC setup numbers: 240^2 um^2 pixel, 120^2 um^2 speckle, "
          "5 ns / 1 ps") {
  DetectionGeometry g = base_geom();
  g.pixel_area = 240.0 * 240.0;
  g.coherence_area = 120.0 * 120.0;
  g.detection_time = 5e-9;
  g.coherence_time = 1e-12;
  g.object_area = 195 * g.pixel_area;
  const auto p = derive_params(g, SourceKind::TwinBeam, 0.2, 4000);
  CHECK(p.modes_per_pixel == 20000);  // 4 spatial x 5000 temporal
  CHECK(p.eta2 == doctest::Approx(1.0));
  CHECK(p.resolution_cells == 195);
}

TEST_CASE("undersized pixel reduces the collection efficiency") {
  DetectionGeometry g = base_geom();
  g.pixel_area = 0.5;
  g.base_efficiency_2 = 0.8;
  const auto p = derive_params(g, SourceKind::Thermal, 1.0, 10);
  CHECK(p.eta2 == doctest::Approx(0.4));
  CHECK(p.modes_per_pixel == 1);
}

TEST_CASE("invalid geometry and parameters are rejected") {
  DetectionGeometry g = base_geom();
  g.pixel_area = 0;
  CHECK_THROWS_AS(derive_params(g, SourceKind::TwinBeam, 1, 10),
                  std::invalid_argument);
  g = base_geom();
  g.base_efficiency_2 = 1.5;
  CHECK_THROWS_AS(derive_params(g, SourceKind::TwinBeam, 1, 10),
                  std::invalid_argument);

  ExperimentParams p;
  p.mu = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ExperimentParams{};
  p.frames = 1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = ExperimentParams{};
  p.pump_mu_variance = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("illumination and excess noise are derived, not stored") {
  ExperimentParams p;
  p.mu = 0.2;
  p.modes_per_pixel = 20000;
  p.eta2 = 0.475;
  CHECK(p.illumination() == doctest::Approx(0.475 * 20000 * 0.2));
  CHECK(p.excess_noise() == doctest::Approx(0.475 * 0.2));
  p.mu = 0.4;
  CHECK(p.illumination() == doctest::Approx(0.475 * 20000 * 0.4));
}

TEST_CASE("monotonicity: growing the pixel never lowers M or eta_coll") {
  double prev_eta = -1;
  long prev_m = 0;
  for (double apix : {0.1, 0.4, 0.8, 1.0, 1.7, 3.0, 12.0}) {
    DetectionGeometry g = base_geom();
    g.pixel_area = apix;
    const auto p = derive_params(g, SourceKind::TwinBeam, 1.0, 10);
    CHECK(p.eta2 >= prev_eta);
    CHECK(p.modes_per_pixel >= prev_m);
    if (apix >= 1.0) CHECK(p.eta2 == doctest::Approx(1.0));
    if (apix < 1.0) CHECK(p.eta2 < 1.0);
    prev_eta = p.eta2;
    prev_m = p.modes_per_pixel;
  }
}

TEST_CASE("R recovers the object area within one rounding unit") {
  for (double apix : {0.5, 1.0, 2.5})
    for (double ain : {1.0, 3.7, 55.4, 1000.0}) {
      DetectionGeometry g = base_geom();
      g.pixel_area = apix;
      g.object_area = ain;
      const auto p = derive_params(g, SourceKind::Thermal, 1.0, 10);
      const double unit = std::max(apix, g.coherence_area);
      if (ain >= 0.5 * unit)
        CHECK(std::fabs(p.resolution_cells * unit - ain) <= 0.5 * unit + 1e-12);
    }
}
