#include <benchmark/benchmark.h>

#include "subriem/carnot/algebra.hpp"
#include "subriem/ccmetric/distance.hpp"

using namespace subriem;

static void BM_ccdist(benchmark::State& state, carnot::GradedLieAlgebra alg)
{
    const ccmetric::HorizontalFields F(alg);
    const auto pairs = ccmetric::random_pairs(alg.dim(), 1, 1.0, 3);
    ccmetric::DistanceOptions opts;
    opts.segments = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(ccmetric::cc_distance(F, pairs[0].first, pairs[0].second, opts).value);
}
BENCHMARK_CAPTURE(BM_ccdist, h3, carnot::heisenberg(1))->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ccdist, free_2_3, carnot::free_rank2_step3())->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
