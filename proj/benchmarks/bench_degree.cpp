#include <benchmark/benchmark.h>

#include "jonq/degree.hpp"

using namespace jonq;

static void BM_DegreeSequence(benchmark::State& state) {
    const auto f = specialize_f(mpq_class(1237), mpq_class(4409));
    for (auto _ : state) benchmark::DoNotOptimize(degree_sequence(f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_DegreeSequence)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Compose(benchmark::State& state) {
    const auto f = specialize_f(mpq_class(1237), mpq_class(4409));
    const auto f4 = compose(f, compose(f, compose(f, f)));
    for (auto _ : state) benchmark::DoNotOptimize(compose(f, f4));
}
BENCHMARK(BM_Compose)->Unit(benchmark::kMillisecond);

static void BM_HomogeneousGcd(benchmark::State& state) {
    const auto f = specialize_f(mpq_class(1237), mpq_class(4409));
    std::vector<Poly3> raw;
    for (const auto& c : f.components) raw.push_back(c.substitute(f.components));
    for (auto _ : state) benchmark::DoNotOptimize(gcd_homogeneous(raw));
}
BENCHMARK(BM_HomogeneousGcd);
