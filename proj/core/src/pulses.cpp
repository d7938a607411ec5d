#include "eitsim/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eitsim {
namespace {

double sech(double x) noexcept {
  return 1.0 / std::cosh(x);
}

}  // namespace

double ipow(double x, unsigned n) noexcept {
  double result = 1.0;
  while (n != 0) {
    if (n & 1U) result *= x;
    x *= x;
    n >>= 1U;
  }
  return result;
}

ProbeShape ProbeShape::gaussian(double g0, double tau0, double sigma) {
  ProbeShape s;
  s.kind = ProbeKind::gaussian;
  s.g0 = g0;
  s.tau0 = tau0;
  s.sigma = sigma;
  s.f = 0.0;
  s.tau1 = tau0;
  return s;
}

ProbeShape ProbeShape::double_sech(double g0, double tau0, double sigma, double f) {
  return double_sech(g0, tau0, sigma, f, tau0 + 4.0 * sigma);
}

ProbeShape ProbeShape::double_sech(double g0, double tau0, double sigma, double f, double tau1) {
  ProbeShape s;
  s.kind = ProbeKind::double_sech;
  s.g0 = g0;
  s.tau0 = tau0;
  s.sigma = sigma;
  s.f = f;
  s.tau1 = tau1;
  return s;
}

void ProbeShape::validate() const {
  std::vector<std::string> bad;
  if (!(g0 >= 0.0) || !std::isfinite(g0)) bad.emplace_back("probe.g0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) bad.emplace_back("probe.sigma");
  if (!std::isfinite(tau0)) bad.emplace_back("probe.tau0");
  if (kind == ProbeKind::double_sech) {
    if (!(f >= 0.0) || !std::isfinite(f)) bad.emplace_back("probe.f");
    if (!std::isfinite(tau1)) bad.emplace_back("probe.tau1");
  }
  if (!bad.empty()) {
    std::string msg = "invalid probe shape:";
    for (const auto& b : bad) msg += ' ' + b;
    throw ValidationError(std::move(bad), msg);
  }
}

double ProbeShape::value_at(double tau) const noexcept {
  const double x = (tau - tau0) / sigma;
  if (kind == ProbeKind::gaussian) return g0 * std::exp(-x * x);
  return g0 * (sech(x) + f * sech((tau - tau1) / sigma));
}

ControlShape ControlShape::cw(double G0) {
  ControlShape s;
  s.kind = ControlKind::cw;
  s.G0 = G0;
  return s;
}

ControlShape ControlShape::super_gaussian(double G0, double tau2, double sigma_p, int alpha) {
  ControlShape s;
  s.kind = ControlKind::super_gaussian;
  s.G0 = G0;
  s.tau2 = tau2;
  s.sigma_p = sigma_p;
  s.alpha = alpha;
  return s;
}

void ControlShape::validate() const {
  std::vector<std::string> bad;
  std::ostringstream msg;
  msg << "invalid control shape:";
  if (!(G0 >= 0.0) || !std::isfinite(G0)) {
    bad.emplace_back("control.G0");
    msg << " control.G0 (must be >= 0)";
  }
  if (kind == ControlKind::super_gaussian) {
    if (!(sigma_p > 0.0) || !std::isfinite(sigma_p)) {
      bad.emplace_back("control.sigma_p");
      msg << " control.sigma_p (must be > 0)";
    }
    if (alpha <= 0 || alpha % 2 != 0) {
      bad.emplace_back("control.alpha");
      msg << " control.alpha (must be an even positive integer, got " << alpha << ")";
    }
    if (!std::isfinite(tau2)) {
      bad.emplace_back("control.tau2");
      msg << " control.tau2";
    }
    if (!(hold >= 0.0) || !std::isfinite(hold)) {
      bad.emplace_back("control.hold");
      msg << " control.hold (must be >= 0)";
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad), msg.str());
}

double ControlShape::value_at(double tau) const noexcept {
  if (kind == ControlKind::cw) return G0;
  const double distance = std::max(0.0, std::abs(tau - tau2) - 0.5 * hold);
  const double u = distance / sigma_p;
  return G0 * (1.0 - std::exp(-ipow(u, static_cast<unsigned>(alpha))));
}

Envelope sample_probe(const ProbeShape& shape, const TauAxis& axis) {
  shape.validate();
  std::vector<cplx> v(axis.size);
  for (std::size_t i = 0; i < axis.size; ++i) v[i] = shape.value_at(axis.at(i));
  return Envelope(axis, std::move(v));
}

Envelope sample_control(const ControlShape& shape, const TauAxis& axis) {
  shape.validate();
  std::vector<cplx> v(axis.size);
  for (std::size_t i = 0; i < axis.size; ++i) v[i] = shape.value_at(axis.at(i));
  return Envelope(axis, std::move(v));
}

Boundary build_boundary(const ProbeShape& probe, const ControlShape& control,
                        const TauAxis& axis) {
  Boundary b{sample_probe(probe, axis), sample_control(control, axis), {}};

  const double g_peak = b.probe.max_abs();
  if (g_peak > 0.0 && std::abs(b.probe[0]) > 1e-3 * probe.g0) {
    std::ostringstream msg;
    msg << "probe is not negligible at tau_min=" << axis.min << " (|g|=" << std::abs(b.probe[0])
        << "); the medium is assumed to start in |3>";
    b.warnings.push_back(msg.str());
  }

  // Loading window: up to the probe's (first) peak.
  for (std::size_t i = 0; i < axis.size && axis.at(i) <= probe.peak_time(); ++i) {
    if (std::abs(b.probe[i]) > 0.01 * g_peak && std::abs(b.control[i]) < 0.1 * control.G0) {
      std::ostringstream msg;
      msg << "control is below 10% of G0 at tau=" << axis.at(i)
          << " while the probe is arriving; the dark state is not prepared";
      b.warnings.push_back(msg.str());
      break;
    }
  }
  return b;
}

}  // namespace eitsim
