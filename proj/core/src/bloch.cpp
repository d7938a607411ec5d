#include "eitsim/bloch.hpp"

#include <cmath>
#include <string>

namespace eitsim {
namespace {

constexpr double kGamma1 = 0.5;
constexpr double kGamma2 = 0.5;
constexpr double kExcitedDecay = 2.0 * (kGamma1 + kGamma2);
constexpr double kFeedTo2 = 2.0 * kGamma2;
constexpr double kOpticalDecay = kGamma1 + kGamma2;
constexpr cplx kI{0.0, 1.0};

inline AtomStateRate rhs(const AtomState& s, cplx g, cplx G, double detuning,
                         double ground_decay) noexcept {
  const double r33 = s.rho33();
  const cplx r21 = std::conj(s.rho12);
  const cplx r32 = std::conj(s.rho23);

  // iGρ21 − iG*ρ12 = −2 Im(G ρ12*), likewise for the probe pair.
  const double control_flow = std::imag(G * r21);
  const double probe_flow = std::imag(g * std::conj(s.rho13));

  AtomStateRate d;
  d.rho11 = -kExcitedDecay * s.rho11 - 2.0 * control_flow - 2.0 * probe_flow;
  d.rho22 = kFeedTo2 * s.rho11 + 2.0 * control_flow;
  d.rho12 = -kOpticalDecay * s.rho12 + kI * (G * s.rho22 + g * r32 - G * s.rho11);
  d.rho13 = -kOpticalDecay * s.rho13 + kI * (G * s.rho23 + g * r33 - g * s.rho11) -
            kI * detuning * s.rho13;
  d.rho23 = kI * (std::conj(G) * s.rho13 - g * r21) - kI * detuning * s.rho23 -
            ground_decay * s.rho23;
  return d;
}

inline AtomState axpy(double h, const AtomStateRate& k, const AtomState& y) noexcept {
  return {y.rho11 + h * k.rho11, y.rho22 + h * k.rho22, y.rho12 + h * k.rho12,
          y.rho13 + h * k.rho13, y.rho23 + h * k.rho23};
}

inline AtomState rk4(const AtomState& y, const StepFields& f, double h, double detuning,
                     double ground_decay) noexcept {
  const AtomStateRate k1 = rhs(y, f.start.probe, f.start.control, detuning, ground_decay);
  const AtomStateRate k2 =
      rhs(axpy(0.5 * h, k1, y), f.mid.probe, f.mid.control, detuning, ground_decay);
  const AtomStateRate k3 =
      rhs(axpy(0.5 * h, k2, y), f.mid.probe, f.mid.control, detuning, ground_decay);
  const AtomStateRate k4 = rhs(axpy(h, k3, y), f.end.probe, f.end.control, detuning, ground_decay);
  const double w = h / 6.0;
  return {y.rho11 + w * (k1.rho11 + 2.0 * k2.rho11 + 2.0 * k3.rho11 + k4.rho11),
          y.rho22 + w * (k1.rho22 + 2.0 * k2.rho22 + 2.0 * k3.rho22 + k4.rho22),
          y.rho12 + w * (k1.rho12 + 2.0 * k2.rho12 + 2.0 * k3.rho12 + k4.rho12),
          y.rho13 + w * (k1.rho13 + 2.0 * k2.rho13 + 2.0 * k3.rho13 + k4.rho13),
          y.rho23 + w * (k1.rho23 + 2.0 * k2.rho23 + 2.0 * k3.rho23 + k4.rho23)};
}

inline bool populations_ok(const AtomState& s) noexcept {
  constexpr double tol = kStepPopulationTolerance;
  const double r33 = s.rho33();
  return s.rho11 >= -tol && s.rho11 <= 1.0 + tol && s.rho22 >= -tol && s.rho22 <= 1.0 + tol &&
         r33 >= -tol && r33 <= 1.0 + tol;
}

[[noreturn]] void throw_unstable(const AtomState& s, std::size_t tau_index) {
  const auto what = s.invariant_violation(kStepPopulationTolerance);
  throw IntegrationError(tau_index, "Bloch integration unstable at tau index " +
                                        std::to_string(tau_index) + ": " +
                                        what.value_or("non-finite state"));
}

}  // namespace

AtomStateRate bloch_rhs(const AtomState& state, cplx probe, cplx control,
                        const BlochParams& params) noexcept {
  return rhs(state, probe, control, params.detuning, params.ground_decay);
}

AtomState rk4_step(const AtomState& state, const StepFields& fields, double dtau,
                   const BlochParams& params, std::size_t tau_index) {
  const AtomState next = rk4(state, fields, dtau, params.detuning, params.ground_decay);
  if (!populations_ok(next)) throw_unstable(next, tau_index);
  return next;
}

CoherenceSlice evolve_slice(const Envelope& probe, const Envelope& control,
                            const BlochParams& params) {
  if (!(probe.axis() == control.axis())) {
    throw ValidationError({"control.axis"}, "probe and control are sampled on different grids");
  }
  const std::size_t n = probe.size();
  const double h = probe.axis().step();
  const auto g = probe.values();
  const auto G = control.values();

  CoherenceSlice out;
  out.rho13.resize(n);
  out.rho12.resize(n);
  out.rho32.resize(n);

  AtomState state = AtomState::ground();
  out.rho13[0] = state.rho13;
  out.rho12[0] = state.rho12;
  out.rho32[0] = state.rho32();

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const StepFields f{{g[i], G[i]},
                       {0.5 * (g[i] + g[i + 1]), 0.5 * (G[i] + G[i + 1])},
                       {g[i + 1], G[i + 1]}};
    state = rk4(state, f, h, params.detuning, params.ground_decay);
    if (!populations_ok(state)) throw_unstable(state, i + 1);
    out.rho13[i + 1] = state.rho13;
    out.rho12[i + 1] = state.rho12;
    out.rho32[i + 1] = state.rho32();
  }
  return out;
}

AtomState dark_state(double probe, double control) {
  const double v2 = probe * probe + control * control;
  if (!(v2 > 0.0)) throw DomainError("dark_state: both fields are zero");
  AtomState s;
  s.rho22 = probe * probe / v2;
  s.rho11 = 0.0;
  s.rho23 = -probe * control / v2;
  return s;
}

}  // namespace eitsim
