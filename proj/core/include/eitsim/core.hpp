#pragma once

// Units contract, simulation grid and the containers shared by every module.
//
// Everything is nondimensional: time in units of 1/γ, depth in units of γ/η,
// Rabi frequencies in units of γ. Axes therefore read directly as γτ and ηζ/γ.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eitsim/errors.hpp"

namespace eitsim {

using cplx = std::complex<double>;

/// Returns η = 3·λ²·N·γ/(8π). Throws DomainError for non-positive input.
double eta_from_physical(double wavelength, double density, double gamma);

/// Scale factors of the nondimensional frame. The simulation itself always
/// runs with gamma = eta = 1; the physical fields are only for conversion.
struct MediumFrame {
  double gamma = 1.0;
  double eta = 1.0;
  std::optional<double> wavelength;
  std::optional<double> density;

  /// γ₁ = γ₂ = γ/2.
  double gamma1() const noexcept { return 0.5 * gamma; }
  double gamma2() const noexcept { return 0.5 * gamma; }

  static MediumFrame nondimensional() { return {}; }
  static MediumFrame from_physical(double wavelength, double density, double gamma);

  /// Throws ValidationError if gamma/eta are not positive or eta disagrees
  /// with the physical parameters when both are present.
  void validate() const;
};

/// Uniformly sampled retarded-time axis.
struct TauAxis {
  double min = 0.0;
  double max = 1.0;
  std::size_t size = 2;

  double step() const noexcept { return (max - min) / static_cast<double>(size - 1); }
  double at(std::size_t i) const noexcept { return min + static_cast<double>(i) * step(); }
  bool operator==(const TauAxis&) const = default;
};

/// Validated (τ, ζ) discretization. Snapshot depths are snapped onto the
/// marching lattice and deduplicated at construction.
class Grid {
 public:
  static Grid make(double tau_min, double tau_max, std::size_t n_tau, double zeta_max,
                   std::size_t n_zeta, std::vector<double> snapshot_depths);

  const TauAxis& tau() const noexcept { return tau_; }
  double dtau() const noexcept { return tau_.step(); }
  double zeta_max() const noexcept { return zeta_max_; }
  std::size_t n_zeta() const noexcept { return n_zeta_; }
  double dzeta() const noexcept { return zeta_max_ / static_cast<double>(n_zeta_); }

  /// Marching-step indices of the snapshots, strictly increasing.
  std::span<const std::size_t> snapshot_steps() const noexcept { return snapshot_steps_; }
  std::vector<double> snapshot_depths() const;
  double depth_of_step(std::size_t step) const noexcept {
    return static_cast<double>(step) * dzeta();
  }

 private:
  Grid() = default;

  TauAxis tau_;
  double zeta_max_ = 0.0;
  std::size_t n_zeta_ = 1;
  std::vector<std::size_t> snapshot_steps_;
};

inline Grid make_grid(double tau_min, double tau_max, std::size_t n_tau, double zeta_max,
                      std::size_t n_zeta, std::vector<double> snapshot_depths) {
  return Grid::make(tau_min, tau_max, n_tau, zeta_max, n_zeta, std::move(snapshot_depths));
}

/// A complex Rabi-frequency envelope sampled on a τ axis. Immutable.
class Envelope {
 public:
  /// Throws ValidationError on a length mismatch or non-finite samples.
  Envelope(TauAxis axis, std::vector<cplx> values);

  static Envelope zeros(const TauAxis& axis);

  const TauAxis& axis() const noexcept { return axis_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const cplx& operator[](std::size_t i) const noexcept { return values_[i]; }
  double tau(std::size_t i) const noexcept { return axis_.at(i); }

  double max_abs() const noexcept;

 private:
  TauAxis axis_;
  std::vector<cplx> values_;
};

/// The five evolved density-matrix components. ρ₃₃ follows from the trace;
/// ρ₂₁, ρ₃₁, ρ₃₂ are the conjugates of the stored upper triangle.
struct AtomState {
  double rho11 = 0.0;
  double rho22 = 0.0;
  cplx rho12{};
  cplx rho13{};
  cplx rho23{};

  double rho33() const noexcept { return 1.0 - rho11 - rho22; }
  cplx rho32() const noexcept { return std::conj(rho23); }

  /// All population in |3⟩.
  static AtomState ground() noexcept { return {}; }

  /// Empty if populations and coherence moduli lie within tolerance,
  /// otherwise a short description of the first violation.
  std::optional<std::string> invariant_violation(double tol) const;

  AtomState& operator+=(const AtomState& o) noexcept {
    rho11 += o.rho11;
    rho22 += o.rho22;
    rho12 += o.rho12;
    rho13 += o.rho13;
    rho23 += o.rho23;
    return *this;
  }
};

/// Time derivative of an AtomState; shares its layout.
using AtomStateRate = AtomState;

inline AtomState operator+(AtomState a, const AtomState& b) noexcept { return a += b; }
inline AtomState operator*(double s, const AtomState& a) noexcept {
  return {s * a.rho11, s * a.rho22, s * a.rho12, s * a.rho13, s * a.rho23};
}

/// Snapshots of the fields and of ρ₃₂ at selected depths.
struct FieldHistory {
  Envelope boundary_probe;
  Envelope boundary_control;
  std::vector<double> depths;
  std::vector<Envelope> probe;
  std::vector<Envelope> control;
  std::vector<std::vector<cplx>> coherence32;
  /// Non-fatal diagnostics raised while building or marching the run.
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return depths.size(); }
};

}  // namespace eitsim
