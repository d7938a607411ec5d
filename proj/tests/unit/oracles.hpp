#pragma once

// Reference implementations used only by the tests.

#include <array>
#include <cmath>
#include <complex>

#include "eitsim/core.hpp"

namespace oracle {

using eitsim::cplx;
using Matrix3 = std::array<std::array<cplx, 3>, 3>;

inline Matrix3 to_matrix(const eitsim::AtomState& s) {
  Matrix3 r{};
  r[0][0] = s.rho11;
  r[1][1] = s.rho22;
  r[2][2] = s.rho33();
  r[0][1] = s.rho12;
  r[0][2] = s.rho13;
  r[1][2] = s.rho23;
  r[1][0] = std::conj(s.rho12);
  r[2][0] = std::conj(s.rho13);
  r[2][1] = std::conj(s.rho23);
  return r;
}

/// Full Liouvillian: −i[H, ρ] plus radiative decay of |1⟩ into |2⟩ and |3⟩.
/// Levels are indexed 0 = |1⟩, 1 = |2⟩, 2 = |3⟩.
inline Matrix3 liouvillian(const Matrix3& r, cplx g, cplx G, double detuning,
                           double ground_decay = 0.0) {
  Matrix3 h{};
  h[0][1] = -G;
  h[1][0] = -std::conj(G);
  h[0][2] = -g;
  h[2][0] = -std::conj(g);
  h[2][2] = -detuning;

  Matrix3 out{};
  const cplx I{0.0, 1.0};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      cplx c{};
      for (int k = 0; k < 3; ++k) c += h[a][k] * r[k][b] - r[a][k] * h[k][b];
      out[a][b] = -I * c;
    }
  }
  out[0][0] += -2.0 * r[0][0];
  out[1][1] += r[0][0];
  out[2][2] += r[0][0];
  for (int k : {1, 2}) {
    out[0][k] += -r[0][k];
    out[k][0] += -r[k][0];
  }
  out[1][2] += -ground_decay * r[1][2];
  out[2][1] += -ground_decay * r[2][1];
  return out;
}

inline eitsim::AtomState from_matrix(const Matrix3& r) {
  return {r[0][0].real(), r[1][1].real(), r[0][1], r[0][2], r[1][2]};
}

inline Matrix3 axpy(const Matrix3& x, double a, const Matrix3& y) {
  Matrix3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = x[i][j] + a * y[i][j];
  return out;
}

/// Constant-field evolution by many small RK4 steps on the full matrix.
inline Matrix3 evolve(Matrix3 r, cplx g, cplx G, double detuning, double t, double h) {
  const auto n = static_cast<long>(std::ceil(t / h));
  const double dt = t / static_cast<double>(n);
  for (long s = 0; s < n; ++s) {
    const Matrix3 k1 = liouvillian(r, g, G, detuning);
    const Matrix3 k2 = liouvillian(axpy(r, dt / 2, k1), g, G, detuning);
    const Matrix3 k3 = liouvillian(axpy(r, dt / 2, k2), g, G, detuning);
    const Matrix3 k4 = liouvillian(axpy(r, dt, k3), g, G, detuning);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r[i][j] += dt / 6 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
  }
  return r;
}

inline double state_distance(const eitsim::AtomState& a, const eitsim::AtomState& b) {
  double d = std::abs(a.rho11 - b.rho11);
  d = std::max(d, std::abs(a.rho22 - b.rho22));
  d = std::max(d, std::abs(a.rho12 - b.rho12));
  d = std::max(d, std::abs(a.rho13 - b.rho13));
  d = std::max(d, std::abs(a.rho23 - b.rho23));
  return d;
}

inline double gaussian(double g0, double tau0, double sigma, double tau) {
  const double x = (tau - tau0) / sigma;
  return g0 * std::exp(-x * x);
}

}  // namespace oracle
