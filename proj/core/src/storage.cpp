#include "eitsim/storage.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eitsim/adiabaton.hpp"

namespace eitsim {

TauWindow retrieval_window(const ControlShape& control, const TauAxis& axis) {
  return {control.tau2 + 0.5 * control.hold + 1.5 * control.sigma_p, axis.max};
}

double stored_peak_depth(const ScenarioSpec& spec) {
  const TauAxis& axis = spec.grid.tau();
  const Envelope g = sample_probe(spec.probe, axis);
  const Envelope G = sample_control(spec.control, axis);
  const std::vector<double> z = z_map(g, G);

  auto z_at = [&](double tau) {
    const double pos = std::clamp((tau - axis.min) / axis.step(), 0.0,
                                  static_cast<double>(axis.size - 1));
    const auto i = std::min(static_cast<std::size_t>(pos), axis.size - 2);
    const double t = pos - static_cast<double>(i);
    return (1.0 - t) * z[i] + t * z[i + 1];
  };
  return z_at(spec.control.tau2) - z_at(spec.probe.peak_time());
}

void check_storage_geometry(const ScenarioSpec& spec) {
  if (spec.control.kind != ControlKind::super_gaussian) {
    throw ScenarioError("storage/retrieval needs a super_gaussian control");
  }
  const TauAxis& axis = spec.grid.tau();
  if (spec.control.tau2 <= axis.min || spec.control.tau2 >= axis.max) {
    throw ScenarioError("control switching centre tau2 lies outside the tau grid");
  }
  const double depth = stored_peak_depth(spec);
  if (!(depth > 0.0) || !(depth < spec.grid.zeta_max())) {
    std::ostringstream msg;
    msg << "probe is not inside the medium when the control switches off: at tau2="
        << spec.control.tau2 << " its peak sits at depth " << depth << ", outside (0, "
        << spec.grid.zeta_max() << ")";
    throw ScenarioError(msg.str());
  }
  const auto steps = spec.grid.snapshot_steps();
  if (steps.empty() || steps.back() == 0) {
    throw ScenarioError("storage/retrieval needs a snapshot depth beyond 0");
  }
  const TauWindow w = retrieval_window(spec.control, axis);
  if (!(w.begin < w.end)) {
    std::ostringstream msg;
    msg << "retrieval window starts at tau=" << w.begin << ", after tau_max=" << axis.max;
    throw ScenarioError(msg.str());
  }
}

StorageRun run_storage_retrieval(const ScenarioSpec& spec) {
  check_storage_geometry(spec);
  FieldHistory history = propagate(spec);

  const TauAxis& axis = spec.grid.tau();
  const Envelope& input = history.boundary_probe;
  const Envelope& output = history.probe.back();

  StorageReport r{};
  r.retrieval_window = retrieval_window(spec.control, axis);
  r.retrieval_depth = history.depths.back();
  r.stored_peak_depth = stored_peak_depth(spec);
  r.input = pulse_metrics(input);
  r.retrieved = pulse_metrics(output, r.retrieval_window);
  r.energy_ratio = r.retrieved.energy / r.input.energy;
  r.peak_intensity_ratio = r.retrieved.peak_intensity / r.input.peak_intensity;
  r.fwhm_ratio = r.retrieved.fwhm / r.input.fwhm;
  r.fidelity = shape_fidelity(input, TauWindow::whole(axis), output, r.retrieval_window);
  return {std::move(history), r};
}

}  // namespace eitsim
