#include <random>

#include <benchmark/benchmark.h>

#include "subriem/carnot/algebra.hpp"
#include "subriem/carnot/group.hpp"

using namespace subriem::carnot;

static void BM_bch(benchmark::State& state, GradedLieAlgebra alg)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd x(alg.dim()), y(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) {
        x[i] = u(rng);
        y[i] = u(rng);
    }
    for (auto _ : state)
        benchmark::DoNotOptimize(bch(alg, x, y));
}
BENCHMARK_CAPTURE(BM_bch, h3, heisenberg(1));
BENCHMARK_CAPTURE(BM_bch, h5xR, heisenberg(2, 1));
BENCHMARK_CAPTURE(BM_bch, free_2_3, free_rank2_step3());
BENCHMARK_CAPTURE(BM_bch, filiform4, filiform(4));

static void BM_koranyi(benchmark::State& state)
{
    const auto alg = filiform(4);
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(alg.dim(), -1.0, 2.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(koranyi_norm(alg, x));
}
BENCHMARK(BM_koranyi);

BENCHMARK_MAIN();
