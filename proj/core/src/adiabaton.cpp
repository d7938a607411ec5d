#include "eitsim/adiabaton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace eitsim {
namespace {

constexpr cplx kI{0.0, 1.0};

std::vector<double> combined_amplitude(const Envelope& probe, const Envelope& control) {
  if (!(probe.axis() == control.axis())) {
    throw ValidationError({"control.axis"}, "probe and control are sampled on different grids");
  }
  std::vector<double> v(probe.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::sqrt(std::norm(probe[i]) + std::norm(control[i]));
  }
  return v;
}

void require_nonvanishing(const std::vector<double>& v, const TauAxis& axis) {
  const double vmax = *std::max_element(v.begin(), v.end());
  const double floor = kDivisionThreshold * vmax;
  std::size_t first = v.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > floor) || vmax == 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first < v.size()) {
    std::ostringstream msg;
    msg << "V vanishes (below " << kDivisionThreshold << " of its maximum) for tau in ["
        << axis.at(first) << ", " << axis.at(last) << "]";
    throw DivisionHazardError(axis.at(first), axis.at(last), msg.str());
  }
}

template <typename Value>
std::vector<Value> derivative(const std::vector<Value>& y, double h) {
  const std::size_t n = y.size();
  std::vector<Value> d(n);
  d[0] = (y[1] - y[0]) / h;
  d[n - 1] = (y[n - 1] - y[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * h);
  return d;
}

}  // namespace

CoherenceSlice adiabatic_coherences(const Envelope& probe, const Envelope& control) {
  const std::vector<double> v = combined_amplitude(probe, control);
  require_nonvanishing(v, probe.axis());
  const std::size_t n = v.size();
  const double h = probe.axis().step();

  std::vector<cplx> fg(n);
  std::vector<cplx> fG(n);
  for (std::size_t i = 0; i < n; ++i) {
    fg[i] = probe[i] / v[i];
    fG[i] = control[i] / v[i];
  }
  const auto dfg = derivative(fg, h);
  const auto dfG = derivative(fG, h);

  CoherenceSlice out;
  out.rho13.resize(n);
  out.rho12.resize(n);
  out.rho32.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.rho13[i] = kI / v[i] * dfg[i];
    out.rho12[i] = kI / v[i] * dfG[i];
    out.rho32[i] = -probe[i] * control[i] / (v[i] * v[i]);
  }
  return out;
}

AdiabaticityProfile adiabaticity_margin(const Envelope& probe, const Envelope& control) {
  const std::vector<double> v = combined_amplitude(probe, control);
  require_nonvanishing(v, probe.axis());
  const double h = probe.axis().step();
  const std::vector<cplx> g(probe.values().begin(), probe.values().end());
  const std::vector<cplx> G(control.values().begin(), control.values().end());
  const auto dg = derivative(g, h);
  const auto dG = derivative(G, h);

  AdiabaticityProfile p;
  p.margin.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    p.margin[i] = std::abs(G[i] * dg[i] - g[i] * dG[i]) / (v[i] * v[i] * v[i]);
    p.max = std::max(p.max, p.margin[i]);
  }
  p.adiabatic = p.max < kAdiabaticityThreshold;
  return p;
}

std::vector<double> z_map(const Envelope& probe, const Envelope& control) {
  const std::vector<double> v = combined_amplitude(probe, control);
  const double h = probe.axis().step();
  std::vector<double> z(v.size());
  z[0] = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    z[i] = z[i - 1] + 0.5 * h * (v[i - 1] * v[i - 1] + v[i] * v[i]);
  }
  return z;
}

AdiabatonSolution analytic_fields_cw(double g0, double G0, double tau0, double sigma,
                                     std::span<const double> depths, const TauAxis& axis) {
  if (!(G0 > 0.0)) throw DomainError("analytic_fields_cw: G0 must be positive");
  if (!(sigma > 0.0)) throw DomainError("analytic_fields_cw: sigma must be positive");

  AdiabatonSolution sol;
  sol.depths.assign(depths.begin(), depths.end());

  const double s2 = sigma * sigma;
  const double G2 = G0 * G0;
  const double g2 = g0 * g0;
  auto v2_at = [&](double tau) { return g2 * std::exp(-2.0 * (tau - tau0) * (tau - tau0) / s2) + G2; };

  sol.z_map.resize(axis.size);
  const double erf0 = std::erf(std::numbers::sqrt2 * (axis.min - tau0) / sigma);
  const double c = g2 * sigma * std::sqrt(std::numbers::pi / 8.0);
  for (std::size_t i = 0; i < axis.size; ++i) {
    const double tau = axis.at(i);
    sol.z_map[i] =
        G2 * (tau - axis.min) + c * (std::erf(std::numbers::sqrt2 * (tau - tau0) / sigma) - erf0);
  }

  for (double zeta : depths) {
    const double shift = zeta / G2;
    const double theta0 = tau0 + shift;
    std::vector<cplx> g(axis.size);
    std::vector<cplx> G(axis.size);
    for (std::size_t i = 0; i < axis.size; ++i) {
      const double tau = axis.at(i);
      const double ratio = std::sqrt(v2_at(tau) / v2_at(tau - shift));
      const double x = (tau - theta0) / sigma;
      g[i] = ratio * g0 * std::exp(-x * x);
      G[i] = ratio * G0;
    }
    sol.probe.emplace_back(axis, std::move(g));
    sol.control.emplace_back(axis, std::move(G));
  }
  return sol;
}

AdiabatonSolution analytic_fields_general(const Envelope& probe0, const Envelope& control0,
                                          std::span<const double> depths) {
  const std::vector<double> v = combined_amplitude(probe0, control0);
  const TauAxis& axis = probe0.axis();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      std::ostringstream msg;
      msg << "V(0, tau) vanishes at tau=" << axis.at(i) << "; z(tau) cannot be inverted";
      throw InversionError(msg.str());
    }
  }

  AdiabatonSolution sol;
  sol.depths.assign(depths.begin(), depths.end());
  sol.z_map = z_map(probe0, control0);
  const std::vector<double>& z = sol.z_map;
  const std::size_t n = v.size();

  std::vector<cplx> Fg(n);
  std::vector<cplx> FG(n);
  for (std::size_t i = 0; i < n; ++i) {
    Fg[i] = probe0[i] / v[i];
    FG[i] = control0[i] / v[i];
  }

  for (double zeta : depths) {
    std::vector<cplx> g(n);
    std::vector<cplx> G(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = z[i] - zeta;
      cplx fg;
      cplx fG;
      if (x <= z.front()) {
        fg = Fg.front();
        fG = FG.front();
      } else if (x >= z.back()) {
        fg = Fg.back();
        fG = FG.back();
      } else {
        // First sample strictly above x; z is nondecreasing.
        const auto hi =
            static_cast<std::size_t>(std::upper_bound(z.begin(), z.end(), x) - z.begin());
        const std::size_t lo = hi - 1;
        const double t = (x - z[lo]) / (z[hi] - z[lo]);
        fg = (1.0 - t) * Fg[lo] + t * Fg[hi];
        fG = (1.0 - t) * FG[lo] + t * FG[hi];
        const double norm = std::sqrt(std::norm(fg) + std::norm(fG));
        fg /= norm;
        fG /= norm;
      }
      g[i] = v[i] * fg;
      G[i] = v[i] * fG;
    }
    sol.probe.emplace_back(axis, std::move(g));
    sol.control.emplace_back(axis, std::move(G));
  }
  return sol;
}

double v_conservation_error(const FieldHistory& history) {
  const std::vector<double> v0 = combined_amplitude(history.boundary_probe, history.boundary_control);
  const double vmax = *std::max_element(v0.begin(), v0.end());
  double worst = 0.0;
  for (std::size_t d = 0; d < history.size(); ++d) {
    const std::vector<double> v = combined_amplitude(history.probe[d], history.control[d]);
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(v[i] - v0[i]));
  }
  if (vmax == 0.0) return worst == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return worst / vmax;
}

std::vector<OracleResidual> oracle_residuals(const FieldHistory& history,
                                             const AdiabatonSolution& solution) {
  if (solution.depths.size() != history.size()) {
    throw ValidationError({"solution.depths"}, "oracle and history have different depth lists");
  }
  std::vector<OracleResidual> out;
  for (std::size_t d = 0; d < history.size(); ++d) {
    OracleResidual r{history.depths[d], 0.0, 0.0};
    const Envelope& ge = history.probe[d];
    const Envelope& Ge = history.control[d];
    for (std::size_t i = 0; i < ge.size(); ++i) {
      r.probe = std::max(r.probe, std::abs(ge[i] - solution.probe[d][i]));
      r.control = std::max(r.control, std::abs(Ge[i] - solution.control[d][i]));
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace eitsim
