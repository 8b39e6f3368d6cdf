#include <benchmark/benchmark.h>

#include "graphrep/analysis.hpp"
#include "graphrep/complexity.hpp"
#include "graphrep/fixtures.hpp"
#include "graphrep/optimize.hpp"
#include "graphrep/symbolic.hpp"
#include "graphrep/trellis.hpp"

using namespace graphrep;

static void BM_HenonAnalysis(benchmark::State& state) {
  const ControlledGraphMap h = henon_example();
  for (auto _ : state) {
    ControlledGraphMap top = topological_representative(h);
    benchmark::DoNotOptimize(growth_rate(transition_matrix(top)).growth);
  }
}
BENCHMARK(BM_HenonAnalysis);

static void BM_HenonAlgorithm(benchmark::State& state) {
  const ControlledGraphMap h = henon_example();
  for (auto _ : state) benchmark::DoNotOptimize(nielsen_entropy(run_main_algorithm(h)));
}
BENCHMARK(BM_HenonAlgorithm);

static void BM_WorkedExample(benchmark::State& state) {
  const ControlledGraphMap g = algorithm2_example();
  for (auto _ : state) benchmark::DoNotOptimize(run_main_algorithm(g).trace.size());
}
BENCHMARK(BM_WorkedExample);

static void BM_ControlZeta(benchmark::State& state) {
  const ControlledGraphMap g = algorithm2_example();
  const EdgeMask h = control_mask(g.graph);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(zeta_truncated(g, h, n).coefficients.back());
}
BENCHMARK(BM_ControlZeta)->Arg(8)->Arg(32);

static void BM_GrowthRate(benchmark::State& state) {
  const TransitionMatrix m = transition_matrix(topological_representative(henon_example()));
  for (auto _ : state) benchmark::DoNotOptimize(growth_rate(m).growth);
}
BENCHMARK(BM_GrowthRate);

static void BM_TightenPath(benchmark::State& state) {
  const ControlledGraphMap g = algorithm2_example();
  EdgePath p = make_path(g.graph, {forward_dart(0)});
  for (int k = 0; k < state.range(0); ++k) p = apply_map(g, p);
  for (auto _ : state) benchmark::DoNotOptimize(tighten_path(g.graph, p).size());
  state.counters["length"] = static_cast<double>(p.size());
}
BENCHMARK(BM_TightenPath)->Arg(4)->Arg(8);

static void BM_HorseshoeItineraries(benchmark::State& state) {
  const Trellis t = horseshoe();
  const ControlledGraphMap g = run_main_algorithm(derive_initial_map(t)).map;
  const RegionLabels labels = trellis_region_labels(t.encoding);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(itineraries(g, labels, n, {"R0", "R1"}).words.size());
}
BENCHMARK(BM_HorseshoeItineraries)->Arg(6)->Arg(10);

BENCHMARK_MAIN();
