#include <benchmark/benchmark.h>

#include "subriem/spectra/counting.hpp"
#include "subriem/spectra/spectrum.hpp"

using namespace subriem::spectra;

static void BM_h3_table(benchmark::State& state)
{
    const auto spec = make_spec(1, {1.0}, 2, {1, 1});
    const int tau = static_cast<int>(state.range(0));
    const Cutoffs c{tau, 10 * tau, static_cast<double>(tau), static_cast<double>(tau)};
    for (auto _ : state)
        benchmark::DoNotOptimize(dirac_spectrum(spec, c).blocks.size());
}
BENCHMARK(BM_h3_table)->Arg(20)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_h5_table(benchmark::State& state)
{
    const auto spec = make_spec(2, {1.0, 2.0}, 4, {1, 1, 1, 1});
    const Cutoffs c{10, 20, 5.0, 5.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(dirac_spectrum(spec, c).blocks.size());
}
BENCHMARK(BM_h5_table)->Unit(benchmark::kMillisecond);

static void BM_dimension_fit(benchmark::State& state)
{
    const auto table = dirac_spectrum(make_spec(1, {1.0}, 2, {1, 1}), {100, 1000, 100.0, 100.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(dimension_fit(table, 5.0, 20.0).exponent);
}
BENCHMARK(BM_dimension_fit)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
