#pragma once

// Storage and retrieval of a probe pulse by a super-Gaussian switching of
// the control field.

#include "eitsim/analysis.hpp"
#include "eitsim/propagation.hpp"

namespace eitsim {

struct StorageReport {
  PulseMetrics input;
  PulseMetrics retrieved;
  double energy_ratio;
  double peak_intensity_ratio;
  double fwhm_ratio;
  /// shape_fidelity(input, retrieved).
  double fidelity;
  TauWindow retrieval_window;
  double retrieval_depth;
  /// Depth of the probe peak at τ2 predicted by the z(τ) map of the boundary.
  double stored_peak_depth;
};

struct StorageRun {
  FieldHistory history;
  StorageReport report;
};

/// The retrieved pulse is read after the control has recovered:
/// τ > τ2 + hold/2 + 1.5σ′.
TauWindow retrieval_window(const ControlShape& control, const TauAxis& axis);

/// z(τ2) − z(τ_peak) for the boundary fields, i.e. where inside the medium
/// the probe peak sits when the control reaches zero.
double stored_peak_depth(const ScenarioSpec& spec);

/// Throws ScenarioError if the control is not super-Gaussian, the probe peak
/// is not inside (0, zeta_max) at τ2, or the retrieval window is empty.
void check_storage_geometry(const ScenarioSpec& spec);

StorageRun run_storage_retrieval(const ScenarioSpec& spec);

}  // namespace eitsim
