#include "gi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gi {

void DetectionGeometry::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0))
      throw std::invalid_argument(std::string("geometry: ") + name +
                                  " must be > 0");
  };
  positive(pixel_area, "pixel_area");
  positive(coherence_area, "coherence_area");
  positive(detection_time, "detection_time");
  positive(coherence_time, "coherence_time");
  positive(object_area, "object_area");
  for (double e : {base_efficiency_1, base_efficiency_2})
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument("geometry: base efficiency outside [0,1]");
}

void ExperimentParams::validate() const {
  if (!(mu > 0.0)) throw std::invalid_argument("params: mu must be > 0");
  if (modes_per_pixel < 1)
    throw std::invalid_argument("params: modes_per_pixel must be >= 1");
  if (resolution_cells < 1)
    throw std::invalid_argument("params: resolution_cells must be >= 1");
  for (double e : {eta1, eta2})
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument("params: efficiency outside [0,1]");
  if (frames < 2) throw std::invalid_argument("params: frames must be >= 2");
  if (!(pump_mu_variance >= 0.0))
    throw std::invalid_argument("params: pump_mu_variance must be >= 0");
}

ExperimentParams derive_params(const DetectionGeometry& geom, SourceKind source,
                               double mu, long frames,
                               double pump_mu_variance) {
  geom.validate();

  // Mode counts are rounded to the nearest integer, never below 1, so the
  // analytic formulas and the frame simulator agree on the same M and R.
  auto round_count = [](double ratio) {
    return std::max(1L, std::lround(std::max(ratio, 1.0)));
  };
  const double area_ratio = geom.pixel_area / geom.coherence_area;
  const long m_sp = round_count(area_ratio);
  const long m_t = round_count(geom.detection_time / geom.coherence_time);

  const double eta_coll = std::min(area_ratio, 1.0);
  const double eta2 = geom.base_efficiency_2 * eta_coll;
  if (!(eta2 >= 0.0 && eta2 <= 1.0))
    throw std::invalid_argument("derive_params: composed eta2 outside [0,1]");

  const double cell_area = std::max(geom.pixel_area, geom.coherence_area);
  const long cells = std::max(1L, std::lround(geom.object_area / cell_area));

  ExperimentParams p;
  p.source = source;
  p.mu = mu;
  p.modes_per_pixel = m_sp * m_t;
  p.eta1 = geom.base_efficiency_1;
  p.eta2 = eta2;
  p.resolution_cells = cells;
  p.frames = frames;
  p.pump_mu_variance = pump_mu_variance;
  p.validate();
  return p;
}

}  // namespace gi
