#include "eitsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace eitsim {
namespace {

struct IndexRange {
  std::size_t first;
  std::size_t last;  // inclusive
  std::size_t count() const noexcept { return last - first + 1; }
};

IndexRange to_indices(const TauAxis& axis, TauWindow window) {
  const double h = axis.step();
  const double eps = 1e-9 * h;
  const double lo = std::max(window.begin, axis.min);
  const double hi = std::min(window.end, axis.max);
  if (!(hi >= lo)) {
    std::ostringstream msg;
    msg << "empty window [" << window.begin << ", " << window.end << "] on axis [" << axis.min
        << ", " << axis.max << "]";
    throw MetricError(msg.str());
  }
  const auto first = static_cast<std::size_t>(std::ceil((lo - axis.min - eps) / h));
  auto last = static_cast<std::size_t>(std::floor((hi - axis.min + eps) / h));
  last = std::min(last, axis.size - 1);
  if (first > last) throw MetricError("window contains no grid samples");
  return {first, last};
}

std::vector<double> intensities(const Envelope& e, IndexRange r) {
  std::vector<double> out(r.count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(e[r.first + i]);
  return out;
}

double trapezoid(const std::vector<double>& y, double h) noexcept {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * h;
}

}  // namespace

double pulse_energy(const Envelope& envelope, TauWindow window) {
  const IndexRange r = to_indices(envelope.axis(), window);
  return trapezoid(intensities(envelope, r), envelope.axis().step());
}

PulseMetrics pulse_metrics(const Envelope& envelope, TauWindow window) {
  const TauAxis& axis = envelope.axis();
  const double h = axis.step();
  const IndexRange r = to_indices(axis, window);
  const std::vector<double> I = intensities(envelope, r);

  const auto k = static_cast<std::size_t>(std::max_element(I.begin(), I.end()) - I.begin());
  if (!(I[k] > 0.0)) throw MetricError("pulse has zero intensity in the window");

  PulseMetrics m{};
  m.peak_time = axis.at(r.first + k);
  m.peak_intensity = I[k];
  if (k > 0 && k + 1 < I.size()) {
    const double den = I[k - 1] - 2.0 * I[k] + I[k + 1];
    if (den < 0.0) {
      const double delta = 0.5 * (I[k - 1] - I[k + 1]) / den;
      m.peak_time += delta * h;
      m.peak_intensity = I[k] - 0.25 * (I[k - 1] - I[k + 1]) * delta;
    }
  }

  const double half = 0.5 * m.peak_intensity;
  std::size_t left = k;
  while (left > 0 && I[left - 1] >= half) --left;
  if (left == 0) throw MetricError("leading half-maximum crossing lies outside the window");
  std::size_t right = k;
  while (right + 1 < I.size() && I[right + 1] >= half) ++right;
  if (right + 1 == I.size()) {
    throw MetricError("trailing half-maximum crossing lies outside the window");
  }
  // Crossings between (left-1, left) and (right, right+1).
  const double t_left =
      axis.at(r.first + left - 1) + h * (half - I[left - 1]) / (I[left] - I[left - 1]);
  const double t_right =
      axis.at(r.first + right) + h * (I[right] - half) / (I[right] - I[right + 1]);
  m.fwhm = t_right - t_left;
  m.energy = trapezoid(I, h);
  return m;
}

double shape_fidelity(const Envelope& a, TauWindow window_a, const Envelope& b,
                      TauWindow window_b) {
  const std::vector<double> x = intensities(a, to_indices(a.axis(), window_a));
  const std::vector<double> y = intensities(b, to_indices(b.axis(), window_b));

  double xx = 0.0;
  double yy = 0.0;
  for (double v : x) xx += v * v;
  for (double v : y) yy += v * v;
  if (!(xx > 0.0) || !(yy > 0.0)) throw MetricError("shape_fidelity: zero-energy input");
  const double norm = std::sqrt(xx * yy);

  // Correlate over every overlap, y shifted by s relative to x.
  const auto nx = static_cast<std::ptrdiff_t>(x.size());
  const auto ny = static_cast<std::ptrdiff_t>(y.size());
  double best = 0.0;
  for (std::ptrdiff_t s = -(ny - 1); s <= nx - 1; ++s) {
    const std::ptrdiff_t i0 = std::max<std::ptrdiff_t>(0, s);
    const std::ptrdiff_t i1 = std::min(nx, ny + s);
    double acc = 0.0;
    for (std::ptrdiff_t i = i0; i < i1; ++i) acc += x[i] * y[i - s];
    best = std::max(best, acc);
  }
  return std::min(1.0, best / norm);
}

}  // namespace eitsim
