#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "eitsim/spectroscopy.hpp"
#include "oracles.hpp"

using namespace eitsim;

namespace {

double relaxed_absorption(double g, double G, double detuning) {
  return relax_to_steady_state(g, G, detuning, 400.0, 0.05).state.rho13.imag() / g;
}

SusceptibilityScan synthetic(std::vector<double> d, double (*f)(double)) {
  SusceptibilityScan s;
  s.detunings = d;
  for (double x : d) s.absorption.push_back(f(x));
  return s;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return v;
}

}  // namespace

TEST_CASE("linear solve agrees with long-time relaxation") {
  for (double g : {0.1, 0.5, 1.0}) {
    for (double G : {2.0, 3.16}) {
      for (double detuning : {-4.0, -1.3, 0.7, 3.16}) {
        const AtomState a = steady_state(g, G, detuning);
        const Relaxation r = relax_to_steady_state(g, G, detuning);
        REQUIRE(r.residual < 1e-9);
        CHECK(oracle::state_distance(a, r.state) < 1e-6);
      }
    }
  }
}

TEST_CASE("steady state is a fixed point of the full Liouvillian") {
  const AtomState s = steady_state(0.8, 2.5, 1.7, 0.01);
  const auto L = oracle::liouvillian(oracle::to_matrix(s), 0.8, 2.5, 1.7, 0.01);
  for (const auto& row : L)
    for (const auto& x : row) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("resonant steady state is the dark state") {
  for (double g : {0.1, 0.5, 1.0, 2.0}) {
    const AtomState s = steady_state(g, 3.16, 0.0);
    CHECK(oracle::state_distance(s, dark_state(g, 3.16)) < 1e-12);
    CHECK(std::abs(s.rho13.imag()) <= 1e-12);
  }
}

TEST_CASE("no fields means no unique steady state") {
  CHECK_THROWS_AS(steady_state(0.0, 0.0, 0.0), DegenerateSteadyStateError);
}

TEST_CASE("autler-townes doublet of a weak probe") {
  const double G = 3.16;
  const SusceptibilityScan scan = scan_susceptibility(0.01, G, -6, 6, 1201);
  const auto mid = scan.absorption.begin() + 600;
  const auto left = std::max_element(scan.absorption.begin(), mid);
  const auto right = std::max_element(mid, scan.absorption.end());
  const double d_left = scan.detunings[left - scan.absorption.begin()];
  const double d_right = scan.detunings[right - scan.absorption.begin()];
  CHECK(d_left == doctest::Approx(-G).epsilon(0.02));
  CHECK(d_right == doctest::Approx(G).epsilon(0.02));

  // The relaxation route puts its maximum at the same detuning.
  double best = -1.0, best_d = 0.0;
  for (double d = 2.8; d <= 3.5; d += 0.01) {
    const double a = relaxed_absorption(0.01, G, d);
    if (a > best) {
      best = a;
      best_d = d;
    }
  }
  CHECK(std::abs(best_d - d_right) <= 0.015);
}

TEST_CASE("scan symmetry, sign and resonance") {
  for (double g0 : {0.1, 0.5, 1.0}) {
    const SusceptibilityScan s = scan_susceptibility(g0, 3.16, -8, 8, 801);
    const std::size_t n = s.absorption.size();
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(s.absorption[i] - s.absorption[n - 1 - i]) <= 1e-10);
      CHECK(s.absorption[i] >= -1e-12);
    }
    CHECK(std::abs(s.absorption[n / 2]) <= 1e-6);
  }
  CHECK(relaxed_absorption(0.5, 3.16, 1.9) ==
        doctest::Approx(relaxed_absorption(0.5, 3.16, -1.9)).epsilon(1e-8));
}

TEST_CASE("transparency width narrows with probe intensity") {
  double prev = INFINITY;
  for (double g0 : {0.1, 0.5, 1.0}) {
    const double w = transparency_width(scan_susceptibility(g0, 3.16, -8, 8, 1601));
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("transparency width grows with control strength") {
  double prev = 0.0;
  for (double G0 : {2.0, 3.16, 5.0}) {
    const double w = transparency_width(scan_susceptibility(0.1, G0, -12, 12, 2401));
    CHECK(w > prev);
    prev = w;
  }
}

TEST_CASE("width of a synthetic dip") {
  const auto s = synthetic(linspace(-8, 8, 1601), [](double x) { return 1.0 - std::exp(-x * x); });
  CHECK(transparency_width(s) == doctest::Approx(2.0 * std::sqrt(std::log(2.0))).epsilon(1e-4));
  CHECK_THROWS_AS(transparency_width(synthetic(linspace(-8, 8, 101), [](double) { return 1.0; })),
                  ShapeError);
  CHECK_THROWS_AS(
      transparency_width(synthetic(linspace(-0.5, 0.5, 101), [](double x) { return x; })),
      ShapeError);
}

TEST_CASE("scan arguments are validated") {
  CHECK_THROWS_AS(scan_susceptibility(0.1, 3.16, -1, 1, 2), ValidationError);
  CHECK_THROWS_AS(scan_susceptibility(0.1, 0.0, -1, 1, 11), ValidationError);
  CHECK_THROWS_AS(scan_susceptibility(0.0, 3.16, -1, 1, 11), ValidationError);
  CHECK_THROWS_AS(scan_susceptibility(0.1, 3.16, 1, -1, 11), ValidationError);
}

TEST_CASE("threaded scans match serial ones") {
  const auto a = scan_susceptibility(0.5, 3.16, -8, 8, 401, 1);
  const auto b = scan_susceptibility(0.5, 3.16, -8, 8, 401, 3);
  CHECK(a.absorption == b.absorption);
  CHECK(a.detunings == b.detunings);
}
