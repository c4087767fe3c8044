#include <benchmark/benchmark.h>

#include "jonq/cocycle.hpp"

using namespace jonq;

static void BM_Iterate(benchmark::State& state) {
    const auto spec = CocycleSpec::jonquieres_b(generic_alpha(), 2.0, kGenericFreq);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(iterate(spec, 0.123, n));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Iterate)->Arg(1000)->Arg(20000);

static void BM_IterateBTilde(benchmark::State& state) {
    const auto spec = CocycleSpec::b_tilde(generic_alpha(), 2.0, kGenericFreq);
    for (auto _ : state) benchmark::DoNotOptimize(iterate(spec, 0.123, 20000));
    state.SetItemsProcessed(state.iterations() * 20000);
}
BENCHMARK(BM_IterateBTilde);

static void BM_Lyapunov(benchmark::State& state) {
    const auto spec = CocycleSpec::jonquieres_b(generic_alpha(), 2.0, kGenericFreq);
    LyapunovOptions opt;
    opt.threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lyapunov(spec, 20000, 64, 1, opt));
}
BENCHMARK(BM_Lyapunov)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
