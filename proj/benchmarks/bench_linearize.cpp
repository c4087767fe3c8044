#include <benchmark/benchmark.h>

#include "jonq/linearize.hpp"

using namespace jonq;

static void BM_SolveDouble(benchmark::State& state) {
    const MapParams p = MapParams::generic();
    for (auto _ : state) benchmark::DoNotOptimize(solve_coefficients(p, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SolveDouble)->Arg(12)->Arg(24);

static void BM_SolveQuad(benchmark::State& state) {
    const MapParams p = MapParams::generic();
    for (auto _ : state) benchmark::DoNotOptimize(solve_coefficients_quad(p, 12));
}
BENCHMARK(BM_SolveQuad)->Unit(benchmark::kMillisecond);
