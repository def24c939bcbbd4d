#include <benchmark/benchmark.h>

#include "subriem/spectra/hermite.hpp"

using namespace subriem::spectra;

static void BM_hermite_h3(benchmark::State& state)
{
    const auto spec = make_spec(1, {1.0}, 2, {1, 1});
    const HermiteTruncation trunc{static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(hermite_oracle(spec, 1, {}, trunc).size());
}
BENCHMARK(BM_hermite_h3)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_hermite_h5(benchmark::State& state)
{
    const auto spec = make_spec(2, {1.0, 1.0}, 4, {1, 1, 1, 1});
    const HermiteTruncation trunc{static_cast<int>(state.range(0))};
    for (auto _ : state)
        benchmark::DoNotOptimize(hermite_oracle(spec, 1, {}, trunc).size());
}
BENCHMARK(BM_hermite_h5)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
