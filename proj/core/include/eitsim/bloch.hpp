#pragma once

// Optical Bloch equations of the resonantly driven Λ atom and their RK4
// integration along retarded time at a fixed depth.
//
// Level |1⟩ is excited; the probe g couples |1⟩–|3⟩ and the control G couples
// |1⟩–|2⟩. With γ₁ = γ₂ = γ/2 = 1/2:
//
//   ρ̇11 = −2ρ11 + iGρ21 + igρ31 − iG*ρ12 − ig*ρ13
//   ρ̇22 =  ρ11 + iG*ρ12 − iGρ21
//   ρ̇12 = −ρ12 + iGρ22 + igρ32 − iGρ11
//   ρ̇13 = −ρ13 + iGρ23 + igρ33 − igρ11            − iΔρ13
//   ρ̇23 =  iG*ρ13 − igρ21                         − iΔρ23 − γ23ρ23
//
// The Δ terms (probe detuning, control on resonance) and the optional
// ground-coherence decay γ23 are extensions; both default to zero.

#include <cstddef>
#include <vector>

#include "eitsim/core.hpp"

namespace eitsim {

struct BlochParams {
  double detuning = 0.0;
  double ground_decay = 0.0;
};

/// Population excursion beyond [0, 1] tolerated after an RK4 step.
inline constexpr double kStepPopulationTolerance = 1e-3;

/// dρ/dτ for the given state and field values.
AtomStateRate bloch_rhs(const AtomState& state, cplx probe, cplx control,
                        const BlochParams& params = {}) noexcept;

struct FieldSample {
  cplx probe;
  cplx control;
};

/// Field values at τ, τ + dτ/2 and τ + dτ for one RK4 step.
struct StepFields {
  FieldSample start;
  FieldSample mid;
  FieldSample end;
};

/// Classical fourth-order Runge–Kutta step. Throws IntegrationError naming
/// `tau_index` if a population leaves [−tol, 1 + tol].
AtomState rk4_step(const AtomState& state, const StepFields& fields, double dtau,
                   const BlochParams& params = {}, std::size_t tau_index = 0);

/// τ-resolved coherences that drive the field equations.
struct CoherenceSlice {
  std::vector<cplx> rho13;
  std::vector<cplx> rho12;
  std::vector<cplx> rho32;

  std::size_t size() const noexcept { return rho13.size(); }
};

/// Integrates from ρ33 = 1 at τ_min across the whole axis and records ρ13,
/// ρ12 and ρ32 at every sample. Mid-step fields are linearly interpolated.
CoherenceSlice evolve_slice(const Envelope& probe, const Envelope& control,
                            const BlochParams& params = {});

/// Dark state of real fields: ρ22 = g²/V², ρ33 = G²/V², ρ23 = −gG/V².
AtomState dark_state(double probe, double control);

}  // namespace eitsim
