#pragma once

#include "gi/moments.hpp"

namespace gi {

/// Physical detection geometry; areas and times in any consistent units
/// (only ratios enter the derived statistics).
struct DetectionGeometry {
  double pixel_area = 0;        // A_pix
  double coherence_area = 0;    // A_coh (roughly the speckle size)
  double detection_time = 0;    // T_det
  double coherence_time = 0;    // T_coh
  double object_area = 0;       // A_in, transmitting area of the mask
  double base_efficiency_1 = 1; // eta_1 before collection factor
  double base_efficiency_2 = 1; // eta_{2,0}

  void validate() const;  // throws std::invalid_argument
};

/// Statistical parameters of one ghost-imaging experiment.
struct ExperimentParams {
  SourceKind source = SourceKind::TwinBeam;
  double mu = 1.0;             // mean photons per spatiotemporal mode
  long modes_per_pixel = 1;    // M = M_sp * M_t
  double eta1 = 1.0;           // object-arm efficiency
  double eta2 = 1.0;           // reference-arm efficiency incl. collection
  long resolution_cells = 1;   // R
  long frames = 2;             // K
  double pump_mu_variance = 0; // V(mu) across frames; 0 = stable pump

  /// Total photons detected per reference pixel per frame, I = eta2 * M * mu.
  /// Derived on demand so it can never drift from the stored parameters.
  double illumination() const {
    return eta2 * static_cast<double>(modes_per_pixel) * mu;
  }
  /// Excess noise E = I / M.
  double excess_noise() const {
    return illumination() / static_cast<double>(modes_per_pixel);
  }

  void validate() const;  // throws std::invalid_argument
};

/// Derives (M, eta2, R) from the physical geometry:
///   M_sp  = round(max(A_pix/A_coh, 1)),  M_t = round(max(T_det/T_coh, 1))
///   M     = M_sp * M_t
///   eta2  = eta_{2,0} * min(A_pix/A_coh, 1)
///   R     = round(A_in / max(A_pix, A_coh)), at least 1
ExperimentParams derive_params(const DetectionGeometry& geom, SourceKind source,
                               double mu, long frames,
                               double pump_mu_variance = 0.0);

}  // namespace gi
