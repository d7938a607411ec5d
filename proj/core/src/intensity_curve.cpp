#include <vector>

#include "eitsim/analysis.hpp"
#include "eitsim/parallel.hpp"
#include "eitsim/storage.hpp"

namespace eitsim {

std::vector<IntensityRatioPoint> intensity_ratio_curve(std::span<const double> g0s,
                                                       const ScenarioSpec& base,
                                                       unsigned threads) {
  check_storage_geometry(base);
  std::vector<IntensityRatioPoint> out(g0s.size());
  parallel_for(g0s.size(), threads, [&](std::size_t i) {
    ScenarioSpec spec = base;
    spec.probe.g0 = g0s[i];
    const StorageReport r = run_storage_retrieval(spec).report;
    out[i] = {g0s[i], r.input.peak_intensity, r.retrieved.peak_intensity, r.peak_intensity_ratio,
              r.energy_ratio};
  });
  return out;
}

}  // namespace eitsim
