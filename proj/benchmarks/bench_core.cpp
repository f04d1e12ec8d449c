/// @file bench_core.cpp
/// @brief Microbenchmarks for the per-step and per-sample hot paths: one
///        splitting step, the negative-Sobolev elliptic solve, a full
///        diagnostic record, and closed-form oracle evaluation.

#include <benchmark/benchmark.h>

#include <memory>

#include "hypomix/coeffs.hpp"
#include "hypomix/couette.hpp"
#include "hypomix/evolve.hpp"
#include "hypomix/functionals.hpp"
#include "hypomix/grid.hpp"
#include "hypomix/operators.hpp"
#include "hypomix/shear.hpp"

namespace {

using namespace hypomix;

InitialData unit_gaussian() {
  InitialData init;
  init.kind = InitialData::Kind::gaussian_bump;
  init.center = 0.0;
  init.width = 1.0;
  init.amplitude = {1.0, 0.0};
  return init;
}

EvolveConfig step_config() {
  EvolveConfig cfg;
  cfg.dt = 0.01;
  cfg.T = 1.0;
  cfg.sample_every = 1;
  return cfg;
}

// ---- time stepping ---------------------------------------------------------

void BM_StepperStep(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  auto grid = Grid::make(12.0, N);
  const Stepper st(grid, 1, Model::hypoelliptic, 1e-3, couette(),
                   step_config());
  ModeState s = make_initial_state(grid, 1, Model::hypoelliptic,
                                   unit_gaussian());
  for (auto _ : state) {
    st.step(s);
    benchmark::DoNotOptimize(s.g.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(N));
}
BENCHMARK(BM_StepperStep)->Unit(benchmark::kMicrosecond)
    ->Arg(512)->Arg(1024)->Arg(2048)->Arg(4096)->Arg(16384);

// ---- elliptic solve behind the H^-1 norm ------------------------------------

void BM_Hminus1Norm(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  auto grid = Grid::make(12.0, N);
  const Hminus1Solver solver(grid, 1);
  const ModeState s = make_initial_state(grid, 1, Model::hypoelliptic,
                                         unit_gaussian());
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.norm_sq(s.g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(N));
}
BENCHMARK(BM_Hminus1Norm)->Unit(benchmark::kMicrosecond)
    ->Arg(512)->Arg(2048)->Arg(16384);

// ---- one full diagnostic record ---------------------------------------------

void BM_DiagnosticsRecord(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  auto grid = Grid::make(12.0, N);
  const CoeffLedger led = build_ledger(1.0);
  const Diagnostics diag(grid, ShearOnGrid::sample(couette(), *grid), led, 1,
                         1e-3, Model::hypoelliptic);
  ModeState s = make_initial_state(grid, 1, Model::hypoelliptic,
                                   unit_gaussian());
  s.t = 2.0;  // nonzero twist so apply_J does real work
  for (auto _ : state) {
    benchmark::DoNotOptimize(diag.record(s));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(N));
}
BENCHMARK(BM_DiagnosticsRecord)->Unit(benchmark::kMicrosecond)
    ->Arg(512)->Arg(2048)->Arg(16384);

// ---- closed-form oracle ------------------------------------------------------

void BM_OracleNorms(benchmark::State& state) {
  const CouetteSpectrum sp =
      CouetteSpectrum::make(1, Model::hypoelliptic, unit_gaussian());
  double t = 0.0;
  for (auto _ : state) {
    t += 0.25;
    if (t > 100.0) t = 0.25;  // sweep the shifted-quadrature range
    benchmark::DoNotOptimize(exact_norms(sp, 1e-3, t));
  }
}
BENCHMARK(BM_OracleNorms)->Unit(benchmark::kMicrosecond);

void BM_OracleSynthesis(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const CouetteSpectrum sp =
      CouetteSpectrum::make(1, Model::full_laplacian, unit_gaussian());
  auto grid = Grid::make(12.0, N);
  for (auto _ : state) {
    benchmark::DoNotOptimize(to_grid(sp, 1e-2, 2.0, grid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(N));
}
BENCHMARK(BM_OracleSynthesis)->Unit(benchmark::kMillisecond)
    ->Arg(768)->Arg(1536);

// ---- coercivity functional ---------------------------------------------------

void BM_PhiFunctional(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  auto grid = Grid::make(12.0, N);
  const ShearOnGrid sh = ShearOnGrid::sample(sine_perturbed(0.5), *grid);
  const CoeffLedger led = build_ledger(2.0);
  const ModeState s = make_initial_state(grid, 1, Model::hypoelliptic,
                                         unit_gaussian());
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_functional(*grid, sh, led, 1e-3, 1, s.g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(N));
}
BENCHMARK(BM_PhiFunctional)->Unit(benchmark::kMicrosecond)
    ->Arg(512)->Arg(2048)->Arg(16384);

}  // namespace

BENCHMARK_MAIN();
