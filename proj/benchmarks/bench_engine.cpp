#include <benchmark/benchmark.h>

#include "eitsim/eitsim.hpp"

namespace {

using namespace eitsim;

TauAxis axis(std::size_t n) { return {-100.0, 1000.0, n}; }

void BM_BlochRhs(benchmark::State& state) {
  const AtomState rho = dark_state(0.3, 3.16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bloch_rhs(rho, {0.3, 0.0}, {3.16, 0.0}, {0.1, 0.0}));
  }
}
BENCHMARK(BM_BlochRhs);

void BM_EvolveSlice(benchmark::State& state) {
  const TauAxis ax = axis(static_cast<std::size_t>(state.range(0)));
  const Envelope g = sample_probe(ProbeShape::gaussian(1.14, 200.0, 90.0), ax);
  const Envelope G = sample_control(ControlShape::cw(3.16), ax);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_slice(g, G));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvolveSlice)->Arg(5501)->Arg(11001)->Unit(benchmark::kMillisecond);

void BM_AdvanceDepth(benchmark::State& state) {
  const TauAxis ax = axis(static_cast<std::size_t>(state.range(0)));
  const Envelope g = sample_probe(ProbeShape::gaussian(1.14, 200.0, 90.0), ax);
  const Envelope G = sample_control(ControlShape::cw(3.16), ax);
  for (auto _ : state) benchmark::DoNotOptimize(advance_depth(g, G, 0.4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AdvanceDepth)->Arg(5501)->Arg(11001)->Unit(benchmark::kMillisecond);

void BM_SteadyState(benchmark::State& state) {
  double detuning = -8.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(steady_state({0.1, 0.0}, {3.16, 0.0}, detuning));
    detuning = detuning > 8.0 ? -8.0 : detuning + 0.01;
  }
}
BENCHMARK(BM_SteadyState);

}  // namespace

BENCHMARK_MAIN();
