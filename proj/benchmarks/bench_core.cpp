#include <benchmark/benchmark.h>

#include "ovw/field_ops.hpp"
#include "ovw/initial_data.hpp"
#include "ovw/mollifier.hpp"
#include "ovw/orlicz.hpp"
#include "ovw/solver.hpp"
#include "ovw/spectral.hpp"

using namespace ovw;

namespace {

VectorField2 data(const GridSpec& g) {
    RandomFieldSpec s;
    s.seed = 5;
    s.max_mode = 4;
    s.envelope_width = 1.5;
    return band_limited_random(g, s);
}

void BM_ForwardInverse(benchmark::State& state) {
    const auto g = GridSpec::make(static_cast<int>(state.range(0)));
    const auto f = data(g).u;
    for (auto _ : state) {
        auto s = spectral::forward(f);
        benchmark::DoNotOptimize(spectral::inverse(s));
    }
}
BENCHMARK(BM_ForwardInverse)->Arg(64)->Arg(128)->Arg(256);

void BM_SolverStep(benchmark::State& state) {
    SolverConfig cfg;
    cfg.grid = GridSpec::make(static_cast<int>(state.range(0)));
    cfg.nu = 1e-3;
    FlowSolver solver(cfg);
    const auto s0 = solver.initial_state(data(cfg.grid));
    const double dt = 0.5 * cfl_dt(s0.velocity, cfg);
    for (auto _ : state) benchmark::DoNotOptimize(solver.step(s0, dt));
}
BENCHMARK(BM_SolverStep)->Arg(64)->Arg(128)->Arg(256);

void BM_LuxemburgNorm(benchmark::State& state) {
    const auto g = GridSpec::make(static_cast<int>(state.range(0)));
    const auto S = sym_gradient(data(g));
    for (auto _ : state) benchmark::DoNotOptimize(lexp_norm(S));
}
BENCHMARK(BM_LuxemburgNorm)->Arg(64)->Arg(128);

void BM_Commutator(benchmark::State& state) {
    const auto g = GridSpec::make(64);
    const auto U = data(g);
    for (auto _ : state) benchmark::DoNotOptimize(commutator(U, {0.1}));
}
BENCHMARK(BM_Commutator);

void BM_DualityGap(benchmark::State& state) {
    double s = 0.0;
    for (auto _ : state) {
        s += 1e-6;
        benchmark::DoNotOptimize(orlicz::duality_gap(s, 3.0));
    }
}
BENCHMARK(BM_DualityGap);

}  // namespace

BENCHMARK_MAIN();
