#include "eitsim/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace eitsim {

double eta_from_physical(double wavelength, double density, double gamma) {
  if (!(wavelength > 0.0) || !(density > 0.0) || !(gamma > 0.0)) {
    throw DomainError("eta_from_physical: wavelength, density and gamma must all be positive");
  }
  return 3.0 * wavelength * wavelength * density * gamma / (8.0 * std::numbers::pi);
}

MediumFrame MediumFrame::from_physical(double wavelength, double density, double gamma) {
  MediumFrame frame;
  frame.gamma = gamma;
  frame.eta = eta_from_physical(wavelength, density, gamma);
  frame.wavelength = wavelength;
  frame.density = density;
  return frame;
}

void MediumFrame::validate() const {
  std::vector<std::string> bad;
  if (!(gamma > 0.0)) bad.emplace_back("frame.gamma");
  if (!(eta > 0.0)) bad.emplace_back("frame.eta");
  if (bad.empty() && wavelength && density) {
    const double expected = eta_from_physical(*wavelength, *density, gamma);
    if (std::abs(eta - expected) > 1e-12 * std::abs(expected)) bad.emplace_back("frame.eta");
  }
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "invalid medium frame:";
    for (const auto& f : bad) msg << ' ' << f;
    throw ValidationError(std::move(bad), msg.str());
  }
}

Grid Grid::make(double tau_min, double tau_max, std::size_t n_tau, double zeta_max,
                std::size_t n_zeta, std::vector<double> snapshot_depths) {
  std::vector<std::string> bad;
  std::ostringstream msg;
  msg << "invalid grid:";
  auto fail = [&](const char* field, const char* why) {
    bad.emplace_back(field);
    msg << ' ' << field << " (" << why << ')';
  };

  if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || !(tau_max > tau_min)) {
    fail("grid.tau_max", "must exceed tau_min");
  }
  if (n_tau < 2) fail("grid.n_tau", "must be at least 2");
  if (n_zeta < 1) fail("grid.n_zeta", "must be at least 1");
  if (!std::isfinite(zeta_max) || zeta_max < 0.0) fail("grid.zeta_max", "must be >= 0");
  for (double d : snapshot_depths) {
    if (!std::isfinite(d) || d < 0.0 || d > zeta_max) {
      fail("grid.snapshot_depths", "depth outside [0, zeta_max]");
      break;
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad), msg.str());

  Grid grid;
  grid.tau_ = TauAxis{tau_min, tau_max, n_tau};
  grid.zeta_max_ = zeta_max;
  grid.n_zeta_ = n_zeta;

  const double dz = grid.dzeta();
  for (double d : snapshot_depths) {
    std::size_t step = 0;
    if (dz > 0.0) {
      step = static_cast<std::size_t>(std::llround(d / dz));
      step = std::min(step, n_zeta);
    }
    grid.snapshot_steps_.push_back(step);
  }
  std::sort(grid.snapshot_steps_.begin(), grid.snapshot_steps_.end());
  grid.snapshot_steps_.erase(
      std::unique(grid.snapshot_steps_.begin(), grid.snapshot_steps_.end()),
      grid.snapshot_steps_.end());
  return grid;
}

std::vector<double> Grid::snapshot_depths() const {
  std::vector<double> out;
  out.reserve(snapshot_steps_.size());
  for (std::size_t s : snapshot_steps_) out.push_back(depth_of_step(s));
  return out;
}

Envelope::Envelope(TauAxis axis, std::vector<cplx> values)
    : axis_(axis), values_(std::move(values)) {
  if (values_.size() != axis_.size) {
    throw ValidationError({"envelope.values"}, "envelope length " +
                                                   std::to_string(values_.size()) +
                                                   " does not match n_tau " +
                                                   std::to_string(axis_.size));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
      throw ValidationError({"envelope.values"},
                            "non-finite envelope sample at index " + std::to_string(i));
    }
  }
}

Envelope Envelope::zeros(const TauAxis& axis) {
  return Envelope(axis, std::vector<cplx>(axis.size));
}

double Envelope::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::optional<std::string> AtomState::invariant_violation(double tol) const {
  auto outside = [tol](double p) { return !(p >= -tol && p <= 1.0 + tol); };
  std::ostringstream msg;
  if (outside(rho11)) {
    msg << "rho11=" << rho11;
  } else if (outside(rho22)) {
    msg << "rho22=" << rho22;
  } else if (outside(rho33())) {
    msg << "rho33=" << rho33();
  } else if (std::abs(rho12) > 1.0 + tol) {
    msg << "|rho12|=" << std::abs(rho12);
  } else if (std::abs(rho13) > 1.0 + tol) {
    msg << "|rho13|=" << std::abs(rho13);
  } else if (std::abs(rho23) > 1.0 + tol) {
    msg << "|rho23|=" << std::abs(rho23);
  } else {
    return std::nullopt;
  }
  return msg.str();
}

}  // namespace eitsim
