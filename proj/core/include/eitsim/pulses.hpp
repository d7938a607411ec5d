#pragma once

// Boundary (ζ = 0) envelopes for the probe and control fields.

#include <string>
#include <vector>

#include "eitsim/core.hpp"

namespace eitsim {

enum class ProbeKind { gaussian, double_sech };
enum class ControlKind { cw, super_gaussian };

struct ProbeShape {
  ProbeKind kind = ProbeKind::gaussian;
  double g0 = 0.1;
  double tau0 = 200.0;
  double sigma = 90.0;
  /// Relative amplitude of the second sech peak (double_sech only).
  double f = 1.0;
  /// Centre of the second sech peak (double_sech only).
  double tau1 = 560.0;

  static ProbeShape gaussian(double g0, double tau0, double sigma);
  /// Defaults to f = 1 and tau1 = tau0 + 4σ when not given.
  static ProbeShape double_sech(double g0, double tau0, double sigma, double f = 1.0);
  static ProbeShape double_sech(double g0, double tau0, double sigma, double f, double tau1);

  void validate() const;
  double value_at(double tau) const noexcept;
  double peak_time() const noexcept { return tau0; }
};

struct ControlShape {
  ControlKind kind = ControlKind::cw;
  double G0 = 3.16;
  double tau2 = 575.0;
  double sigma_p = 200.0;
  int alpha = 4;
  /// Width of a flat G = 0 plateau centred on tau2. Zero gives the single
  /// super-Gaussian notch; positive values separate switch-off from switch-on.
  double hold = 0.0;

  static ControlShape cw(double G0);
  static ControlShape super_gaussian(double G0, double tau2, double sigma_p, int alpha);

  void validate() const;
  double value_at(double tau) const noexcept;
};

inline constexpr int kAdiabaticSwitching = 4;
inline constexpr int kNonadiabaticSwitching = 100;

/// Exact integer power by repeated squaring.
double ipow(double x, unsigned n) noexcept;

Envelope sample_probe(const ProbeShape& shape, const TauAxis& axis);
Envelope sample_control(const ControlShape& shape, const TauAxis& axis);
inline Envelope sample_probe(const ProbeShape& shape, const Grid& grid) {
  return sample_probe(shape, grid.tau());
}
inline Envelope sample_control(const ControlShape& shape, const Grid& grid) {
  return sample_control(shape, grid.tau());
}

struct Boundary {
  Envelope probe;
  Envelope control;
  std::vector<std::string> warnings;
};

/// Samples both inputs and reports loading problems: control below 10 % of G0
/// while the probe is still arriving, or a probe that is not negligible at
/// the first grid point.
Boundary build_boundary(const ProbeShape& probe, const ControlShape& control, const TauAxis& axis);

}  // namespace eitsim
