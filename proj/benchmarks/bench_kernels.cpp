#include <benchmark/benchmark.h>

#include "glmcf/angle.hpp"
#include "glmcf/covariant.hpp"
#include "glmcf/flow.hpp"
#include "glmcf/metric.hpp"
#include "glmcf/stencil.hpp"
#include "glmcf/trig_poly.hpp"

namespace {

using namespace glmcf;

MetricSpec conformal_spec() { return MetricSpec::conformal(TrigPoly::parse("0.1 sin 1 0", 2)); }

GraphState test_state(const PeriodicGrid& grid) {
  GraphState st;
  st.harmonic = {0.3, 0.0, 0.0};
  st.base_potential = ScalarField(grid, 0);
  st.u = TrigPoly::parse("0.05 sin 1 1", 2).sample(grid);
  return st;
}

void bm_fd_partial(benchmark::State& state) {
  const PeriodicGrid grid(2, static_cast<int>(state.range(0)));
  const ScalarField f = TrigPoly::parse("1 sin 1 1", 2).sample(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fd_partial(f, 0, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(bm_fd_partial)->Arg(64)->Arg(128);

void bm_build_metric(benchmark::State& state) {
  const PeriodicGrid grid(2, static_cast<int>(state.range(0)));
  const MetricSpec spec = conformal_spec();
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_metric(spec, grid));
  }
}
BENCHMARK(bm_build_metric)->Arg(64)->Arg(128);

void bm_angle(benchmark::State& state) {
  const PeriodicGrid grid(2, static_cast<int>(state.range(0)));
  const MetricField m = build_metric(conformal_spec(), grid);
  const GraphState st = test_state(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_graph(st, m));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(bm_angle)->Arg(64)->Arg(128);

void bm_step_rk4(benchmark::State& state) {
  const PeriodicGrid grid(2, static_cast<int>(state.range(0)));
  const MetricField m = build_metric(conformal_spec(), grid);
  GraphState st = test_state(grid);
  const double dt = stable_dt(m, 0.2);
  for (auto _ : state) {
    st = step_rk4(st, m, dt);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(bm_step_rk4)->Arg(64)->Arg(128);

void bm_covariant_hessian(benchmark::State& state) {
  const PeriodicGrid grid(2, static_cast<int>(state.range(0)));
  const MetricField m = build_metric(conformal_spec(), grid);
  const ScalarField u = TrigPoly::parse("0.05 sin 1 1", 2).sample(grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariant_hessian(m, u));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(bm_covariant_hessian)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
