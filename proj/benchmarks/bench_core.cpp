#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/grid.hpp"
#include "fnls/integrator.hpp"
#include "fnls/model.hpp"
#include "fnls/observables.hpp"
#include "fnls/operators.hpp"
#include "fnls/transforms.hpp"
#include "fnls/waves.hpp"

namespace {

using namespace fnls;

// Shared production-sized fixture: the closed-form cubic soliton.
const GridPtr& bench_grid() {
  static const GridPtr grid = make_grid(128.0, 4096);
  return grid;
}

const Profile& bench_soliton() {
  static const Profile prof = exact_soliton(
      WaveParams::traveling(ModelParams(1.0, 1.0), 1.0, 0.25), bench_grid());
  return prof;
}

void BM_analysis(benchmark::State& state) {
  const ComplexField& u = bench_soliton().u0;
  for (auto _ : state) {
    Spectrum c = to_spectrum(u);
    benchmark::DoNotOptimize(c.coefficients().data());
  }
}
BENCHMARK(BM_analysis);

void BM_synthesis(benchmark::State& state) {
  const Spectrum c = to_spectrum(bench_soliton().u0);
  for (auto _ : state) {
    ComplexField u = from_spectrum(c);
    benchmark::DoNotOptimize(u.samples().data());
  }
}
BENCHMARK(BM_synthesis);

void BM_fractional_symbol(benchmark::State& state) {
  const Spectrum c = to_spectrum(bench_soliton().u0);
  for (auto _ : state) {
    Spectrum out = frac_laplacian(c, 0.8);
    benchmark::DoNotOptimize(out.coefficients().data());
  }
}
BENCHMARK(BM_fractional_symbol);

void BM_dealiased_nonlinearity(benchmark::State& state) {
  NonlinearEvaluator nl(bench_grid(), 1.0);
  const Spectrum c = to_spectrum(bench_soliton().u0);
  for (auto _ : state) {
    Spectrum out = nl.apply(c);
    benchmark::DoNotOptimize(out.coefficients().data());
  }
}
BENCHMARK(BM_dealiased_nonlinearity);

void BM_composition_step(benchmark::State& state) {
  const ModelParams p(1.0, 1.0);
  StepperConfig cfg;
  cfg.dt = 6.25e-3;
  Stepper stepper(bench_grid(), p, cfg);
  Spectrum c = to_spectrum(bench_soliton().u0);
  for (auto _ : state) {
    c = stepper.composition_step(c);
    benchmark::DoNotOptimize(c.coefficients().data());
  }
}
BENCHMARK(BM_composition_step)->Unit(benchmark::kMillisecond);

void BM_invariants(benchmark::State& state) {
  const Spectrum c = to_spectrum(bench_soliton().u0);
  const ModelParams p(1.0, 1.0);
  for (auto _ : state) {
    InvariantSet inv = invariants(c, p);
    benchmark::DoNotOptimize(inv);
  }
}
BENCHMARK(BM_invariants);

void BM_profile_solve(benchmark::State& state) {
  const GridPtr grid = make_grid(256.0, 512);
  const WaveParams wave =
      WaveParams::traveling(ModelParams(0.8, 1.0), 1.0, 0.25);
  for (auto _ : state) {
    Profile prof = solve_profile(wave, grid);
    benchmark::DoNotOptimize(prof.residual);
  }
}
BENCHMARK(BM_profile_solve)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_peak_locate(benchmark::State& state) {
  const ComplexField& u = bench_soliton().u0;
  for (auto _ : state) {
    Peak pk = peak_locate(u);
    benchmark::DoNotOptimize(pk);
  }
}
BENCHMARK(BM_peak_locate);

}  // namespace

BENCHMARK_MAIN();
