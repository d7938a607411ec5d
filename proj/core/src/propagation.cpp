#include "eitsim/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace eitsim {
namespace {

constexpr cplx kI{0.0, 1.0};

double max_v(const Envelope& probe, const Envelope& control) noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    m = std::max(m, std::sqrt(std::norm(probe[i]) + std::norm(control[i])));
  }
  return m;
}

void check_blowup(std::span<const cplx> values, double limit, std::size_t depth_index,
                  const char* which) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (!(a <= limit)) {
      std::ostringstream msg;
      msg << "depth marching unstable at depth index " << depth_index << ": |" << which
          << "| = " << a << " at tau index " << i << " exceeds " << limit;
      throw MarchingError(depth_index, msg.str());
    }
  }
}

// Heun step given the coherences already evaluated at the current fields.
DepthStep heun(const Envelope& probe, const Envelope& control, const CoherenceSlice& current,
               double dzeta, const PropagationOptions& options, double limit,
               std::size_t depth_index) {
  const std::size_t n = probe.size();
  const auto g = probe.values();
  const auto G = control.values();

  std::vector<cplx> g_pred(n);
  std::vector<cplx> G_pred(G.begin(), G.end());
  for (std::size_t i = 0; i < n; ++i) g_pred[i] = g[i] + kI * dzeta * current.rho13[i];
  if (!options.freeze_control) {
    for (std::size_t i = 0; i < n; ++i) G_pred[i] = G[i] + kI * dzeta * current.rho12[i];
  }
  check_blowup(g_pred, limit, depth_index, "g");
  check_blowup(G_pred, limit, depth_index, "G");

  Envelope probe_pred(probe.axis(), std::move(g_pred));
  Envelope control_pred(control.axis(), std::move(G_pred));
  CoherenceSlice corrector = evolve_slice(probe_pred, control_pred, options.bloch);

  const double half = 0.5 * dzeta;
  std::vector<cplx> g_next(n);
  std::vector<cplx> G_next(G.begin(), G.end());
  for (std::size_t i = 0; i < n; ++i) {
    g_next[i] = g[i] + kI * half * (current.rho13[i] + corrector.rho13[i]);
  }
  if (!options.freeze_control) {
    for (std::size_t i = 0; i < n; ++i) {
      G_next[i] = G[i] + kI * half * (current.rho12[i] + corrector.rho12[i]);
    }
  }
  check_blowup(g_next, limit, depth_index, "g");
  check_blowup(G_next, limit, depth_index, "G");

  return DepthStep{Envelope(probe.axis(), std::move(g_next)),
                   Envelope(control.axis(), std::move(G_next)), std::move(corrector)};
}

}  // namespace

DepthStep advance_depth(const Envelope& probe, const Envelope& control, double dzeta,
                        const PropagationOptions& options) {
  if (!(probe.axis() == control.axis())) {
    throw ValidationError({"control.axis"}, "probe and control are sampled on different grids");
  }
  const double limit = kBlowupFactor * max_v(probe, control);
  const CoherenceSlice current = evolve_slice(probe, control, options.bloch);
  return heun(probe, control, current, dzeta, options, limit, 0);
}

FieldHistory propagate(const Envelope& probe0, const Envelope& control0, const Grid& grid,
                       const PropagationOptions& options) {
  if (!(probe0.axis() == grid.tau()) || !(control0.axis() == grid.tau())) {
    throw ValidationError({"grid.tau"}, "boundary envelopes are not sampled on the grid");
  }

  FieldHistory history{probe0, control0, {}, {}, {}, {}, {}};

  std::vector<std::size_t> record_steps{0};
  for (std::size_t s : grid.snapshot_steps()) {
    if (s != 0) record_steps.push_back(s);
  }
  const std::size_t last_step = record_steps.back();
  const double limit = kBlowupFactor * max_v(probe0, control0);
  const double dzeta = grid.dzeta();

  Envelope g = probe0;
  Envelope G = control0;
  std::size_t next_record = 0;

  auto fail = [&](const Error& cause, std::size_t step) -> PropagationError {
    return PropagationError(std::string(cause.kind()), step,
                            std::make_shared<const FieldHistory>(history),
                            std::string(cause.what()) + " (depth " +
                                std::to_string(grid.depth_of_step(step)) + ")");
  };

  for (std::size_t step = 0; step <= last_step; ++step) {
    CoherenceSlice current;
    try {
      current = evolve_slice(g, G, options.bloch);
    } catch (const Error& e) {
      throw fail(e, step);
    }
    if (step == record_steps[next_record]) {
      history.depths.push_back(grid.depth_of_step(step));
      history.probe.push_back(g);
      history.control.push_back(G);
      history.coherence32.push_back(current.rho32);
      ++next_record;
    }
    if (step == last_step) break;
    try {
      DepthStep next = heun(g, G, current, dzeta, options, limit, step);
      g = std::move(next.probe);
      G = std::move(next.control);
    } catch (const Error& e) {
      throw fail(e, step);
    }
  }
  return history;
}

FieldHistory propagate(const ScenarioSpec& spec) {
  Boundary boundary = build_boundary(spec.probe, spec.control, spec.grid.tau());
  FieldHistory history = propagate(boundary.probe, boundary.control, spec.grid, spec.options);
  history.warnings.insert(history.warnings.begin(), boundary.warnings.begin(),
                          boundary.warnings.end());
  return history;
}

}  // namespace eitsim
