#pragma once

// Scalar pulse diagnostics: peak, width, energy, shape fidelity and the
// retrieved-to-input intensity ratio curve.

#include <cstddef>
#include <span>
#include <vector>

#include "eitsim/core.hpp"

namespace eitsim {

struct ScenarioSpec;

/// Closed τ interval [begin, end].
struct TauWindow {
  double begin;
  double end;

  static TauWindow whole(const TauAxis& axis) { return {axis.min, axis.max}; }
};

struct PulseMetrics {
  double peak_time;
  double peak_intensity;
  /// Full width at half maximum of |g|².
  double fwhm;
  /// ∫|g|² dτ (trapezoidal).
  double energy;
};

/// Throws MetricError on an empty window, a zero pulse, or a pulse whose half
/// maximum is not crossed inside the window on both sides.
PulseMetrics pulse_metrics(const Envelope& envelope, TauWindow window);
inline PulseMetrics pulse_metrics(const Envelope& envelope) {
  return pulse_metrics(envelope, TauWindow::whole(envelope.axis()));
}

/// ∫|g|² dτ over the window only.
double pulse_energy(const Envelope& envelope, TauWindow window);

/// Maximum over integer-sample shifts of the normalised cross-correlation of
/// |a|² and |b|². 1 means equal shapes up to a shift and a positive scale.
double shape_fidelity(const Envelope& a, TauWindow window_a, const Envelope& b,
                      TauWindow window_b);

struct IntensityRatioPoint {
  double g0;
  double input_peak_intensity;
  double output_peak_intensity;
  double intensity_ratio;
  double energy_ratio;
};

/// Runs a storage/retrieval scenario per probe amplitude (base spec with g0
/// replaced) on up to `threads` worker threads. Output order follows `g0s`.
std::vector<IntensityRatioPoint> intensity_ratio_curve(std::span<const double> g0s,
                                                       const ScenarioSpec& base,
                                                       unsigned threads = 1);

}  // namespace eitsim
