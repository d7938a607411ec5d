#pragma once

// Steady-state probe absorption spectra and the EIT transparency window.

#include <cstddef>
#include <vector>

#include "eitsim/bloch.hpp"
#include "eitsim/core.hpp"

namespace eitsim {

struct SusceptibilityScan {
  std::vector<double> detunings;
  /// Im(ρ13)·γ/g0, proportional to the imaginary susceptibility.
  std::vector<double> absorption;
  double g0 = 0.0;
  double G0 = 0.0;
};

/// Stationary state of the (detuned) Bloch equations for constant fields,
/// from a dense solve of the 8 real equations ρ̇ = 0 with ρ33 eliminated
/// through the trace. Throws DegenerateSteadyStateError if the system is
/// singular (e.g. g = G = 0).
AtomState steady_state(cplx probe, cplx control, double detuning, double ground_decay = 0.0);

struct Relaxation {
  AtomState state;
  /// max component of |ρ̇| at the final state.
  double residual;
};

/// Independent route: RK4 from ρ33 = 1 with constant fields up to `t_end`.
Relaxation relax_to_steady_state(cplx probe, cplx control, double detuning, double t_end = 2000.0,
                                 double dt = 0.05);

SusceptibilityScan scan_susceptibility(double g0, double G0, double detuning_min,
                                       double detuning_max, std::size_t n_points,
                                       unsigned threads = 1);

/// Width of the dip around Δ = 0 between the half-maximum crossings of the
/// absorption doublet, linearly interpolated. Throws ShapeError if the
/// centre is not bracketed by higher absorption on both sides.
double transparency_width(const SusceptibilityScan& scan);

}  // namespace eitsim
