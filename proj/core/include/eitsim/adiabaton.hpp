#pragma once

// Adiabatic (dark-state-following) limit of the Maxwell–Bloch system.
//
// When the atoms follow the dark state the coherences are slaved to the
// fields,
//
//   ρ13 ≈ (i/V) ∂τ(g/V),   ρ12 ≈ (i/V) ∂τ(G/V),   ρ32 ≈ −gG/V²,
//
// with V² = |g|² + |G|², valid while |G ∂τg − g ∂τG| ≪ V³. The resulting
// nonlinear wave pair conserves V along ζ and is solved exactly by the change
// of variable z(τ) = ∫ V²(0, τ') dτ':
//
//   g(ζ, τ) = V(0, τ) F_g(z(τ) − ζ),   F_g(x) = g(0, z⁻¹(x)) / V(0, z⁻¹(x)),
//
// and likewise for G. These solutions serve as an oracle for the full engine.

#include <span>
#include <vector>

#include "eitsim/bloch.hpp"
#include "eitsim/core.hpp"

namespace eitsim {

/// Fraction of max V below which V is treated as zero when dividing.
inline constexpr double kDivisionThreshold = 1e-6;
/// The adiabatic regime is declared when the maximum margin is below this.
inline constexpr double kAdiabaticityThreshold = 0.1;

/// Slaved coherences; ∂τ by central differences (one-sided at the ends).
/// Throws DivisionHazardError when V < 1e-6·max V anywhere.
CoherenceSlice adiabatic_coherences(const Envelope& probe, const Envelope& control);

struct AdiabaticityProfile {
  /// |G ∂τg − g ∂τG| / V³ per sample.
  std::vector<double> margin;
  double max = 0.0;
  bool adiabatic = true;
};

AdiabaticityProfile adiabaticity_margin(const Envelope& probe, const Envelope& control);

struct AdiabatonSolution {
  std::vector<double> depths;
  std::vector<Envelope> probe;
  std::vector<Envelope> control;
  /// z(τ) sampled on the grid, z(τ_min) = 0.
  std::vector<double> z_map;
};

/// Cumulative trapezoidal ∫_{τ_min}^{τ} (|g|² + |G|²) dτ'.
std::vector<double> z_map(const Envelope& probe, const Envelope& control);

/// Closed form for CW control G0 and a Gaussian probe. The probe's Gaussian
/// factor is centred on the slow-light-shifted peak τ0 + ζ/G0².
AdiabatonSolution analytic_fields_cw(double g0, double G0, double tau0, double sigma,
                                     std::span<const double> depths, const TauAxis& axis);

/// General solution for arbitrary boundary envelopes via numerical z⁻¹.
/// F is interpolated linearly in z, renormalised to |F_g|² + |F_G|² = 1, and
/// held constant outside the sampled range. Throws InversionError if V(0, τ)
/// vanishes anywhere.
AdiabatonSolution analytic_fields_general(const Envelope& probe0, const Envelope& control0,
                                          std::span<const double> depths);

/// max over depths and τ of |V(ζ, τ) − V(0, τ)| / max_τ V(0, τ).
double v_conservation_error(const FieldHistory& history);

struct OracleResidual {
  double depth;
  double probe;    ///< max_τ |g_engine − g_oracle|
  double control;  ///< max_τ |G_engine − G_oracle|
};

/// Per-depth residuals. The solution must have been evaluated on the
/// history's depths.
std::vector<OracleResidual> oracle_residuals(const FieldHistory& history,
                                             const AdiabatonSolution& solution);

}  // namespace eitsim
