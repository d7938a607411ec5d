#include "eitsim/spectroscopy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "eitsim/parallel.hpp"

namespace eitsim {
namespace {

using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat8 = Eigen::Matrix<double, 8, 8>;

// Real coordinates: ρ11, ρ22, Re/Im ρ12, Re/Im ρ13, Re/Im ρ23.
Vec8 pack(const AtomState& s) {
  Vec8 x;
  x << s.rho11, s.rho22, s.rho12.real(), s.rho12.imag(), s.rho13.real(), s.rho13.imag(),
      s.rho23.real(), s.rho23.imag();
  return x;
}

AtomState unpack(const Vec8& x) {
  return {x(0), x(1), {x(2), x(3)}, {x(4), x(5)}, {x(6), x(7)}};
}

double max_rate(const AtomStateRate& d) {
  return pack(d).cwiseAbs().maxCoeff();
}

}  // namespace

AtomState steady_state(cplx probe, cplx control, double detuning, double ground_decay) {
  const BlochParams params{detuning, ground_decay};
  // The rates are affine in the state once ρ33 = 1 − ρ11 − ρ22 is substituted:
  // ρ̇ = A x + b. Columns of A come from unit probes of the right-hand side.
  const Vec8 b = pack(bloch_rhs(AtomState{}, probe, control, params));
  Mat8 A;
  for (int j = 0; j < 8; ++j) {
    Vec8 e = Vec8::Zero();
    e(j) = 1.0;
    A.col(j) = pack(bloch_rhs(unpack(e), probe, control, params)) - b;
  }

  Eigen::FullPivLU<Mat8> lu(A);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    std::ostringstream msg;
    msg << "stationary system is singular for g=" << probe << ", G=" << control
        << ", detuning=" << detuning << " (rank " << lu.rank() << " of 8)";
    throw DegenerateSteadyStateError(msg.str());
  }
  const Vec8 x = lu.solve(-b);
  if (!x.allFinite()) throw DegenerateSteadyStateError("stationary solve produced non-finite values");
  return unpack(x);
}

Relaxation relax_to_steady_state(cplx probe, cplx control, double detuning, double t_end,
                                 double dt) {
  if (!(dt > 0.0) || !(t_end > 0.0)) throw DomainError("relax_to_steady_state: bad time step");
  const BlochParams params{detuning, 0.0};
  const StepFields fields{{probe, control}, {probe, control}, {probe, control}};
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  const double h = t_end / static_cast<double>(steps);
  AtomState s = AtomState::ground();
  for (std::size_t k = 0; k < steps; ++k) s = rk4_step(s, fields, h, params, k);
  return {s, max_rate(bloch_rhs(s, probe, control, params))};
}

SusceptibilityScan scan_susceptibility(double g0, double G0, double detuning_min,
                                       double detuning_max, std::size_t n_points,
                                       unsigned threads) {
  std::vector<std::string> bad;
  if (n_points < 3) bad.emplace_back("scan.n_points");
  if (!(G0 > 0.0)) bad.emplace_back("control.G0");
  if (!(g0 > 0.0)) bad.emplace_back("probe.g0");
  if (!(detuning_max > detuning_min)) bad.emplace_back("scan.detuning_max");
  if (!bad.empty()) {
    std::string msg = "invalid susceptibility scan:";
    for (const auto& f : bad) msg += ' ' + f;
    throw ValidationError(std::move(bad), msg);
  }

  SusceptibilityScan scan;
  scan.g0 = g0;
  scan.G0 = G0;
  scan.detunings.resize(n_points);
  scan.absorption.resize(n_points);
  const double step = (detuning_max - detuning_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    scan.detunings[i] = detuning_min + static_cast<double>(i) * step;
  }
  parallel_for(n_points, threads, [&](std::size_t i) {
    const AtomState s = steady_state(g0, G0, scan.detunings[i]);
    scan.absorption[i] = s.rho13.imag() / g0;
  });
  return scan;
}

double transparency_width(const SusceptibilityScan& scan) {
  const auto& d = scan.detunings;
  const auto& a = scan.absorption;
  if (d.size() < 3 || a.size() != d.size()) throw ShapeError("scan too short");

  const auto centre = static_cast<std::size_t>(
      std::min_element(d.begin(), d.end(),
                       [](double x, double y) { return std::abs(x) < std::abs(y); }) -
      d.begin());
  const double left_peak = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(centre) + 1);
  const double right_peak = *std::max_element(a.begin() + static_cast<std::ptrdiff_t>(centre), a.end());
  const double peak = std::min(left_peak, right_peak);
  const double half = 0.5 * peak;
  if (!(peak > a[centre]) || !(a[centre] < half)) {
    throw ShapeError("absorption has no dip at zero detuning bracketed by two maxima");
  }

  std::size_t r = centre;
  while (r + 1 < a.size() && a[r + 1] < half) ++r;
  std::size_t l = centre;
  while (l > 0 && a[l - 1] < half) --l;
  if (r + 1 == a.size() || l == 0) throw ShapeError("half-maximum crossing outside the scan");

  const double right = d[r] + (d[r + 1] - d[r]) * (half - a[r]) / (a[r + 1] - a[r]);
  const double left = d[l] - (d[l] - d[l - 1]) * (half - a[l]) / (a[l - 1] - a[l]);
  return right - left;
}

}  // namespace eitsim
