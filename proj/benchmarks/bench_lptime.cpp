#include <benchmark/benchmark.h>

#include "lptime/comoment.hpp"
#include "lptime/conditional.hpp"
#include "lptime/copula.hpp"
#include "lptime/rng.hpp"
#include "lptime/spectrum.hpp"

namespace {

std::vector<double> gaussian(std::size_t n, std::uint64_t seed) {
    lptime::Rng rng(seed);
    std::vector<double> x(n);
    for (double& v : x) v = rng.normal();
    return x;
}

void BM_LpTransform(benchmark::State& state) {
    const auto x = gaussian(static_cast<std::size_t>(state.range(0)), 1);
    const lptime::SeriesSample sample(x);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lptime::lp_transform(sample, 4));
    }
}
BENCHMARK(BM_LpTransform)->Arg(10000)->Arg(100000);

void BM_ComomentAndSmooth(benchmark::State& state) {
    const auto series =
        lptime::lp_transform(lptime::SeriesSample(gaussian(100000, 2)), 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            lptime::bic_smooth(lptime::lp_comoment_matrix(series, 1)));
    }
}
BENCHMARK(BM_ComomentAndSmooth);

void BM_BurgFit(benchmark::State& state) {
    const auto x = gaussian(100000, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lptime::burg_fit(x, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_BurgFit)->Arg(8)->Arg(20);

void BM_ConditionalSampling(benchmark::State& state) {
    const auto series =
        lptime::lp_transform(lptime::SeriesSample(gaussian(5000, 4)), 4);
    lptime::ComomentMatrix m;
    m.rows = m.cols = 4;
    m.n = series.length - 1;
    m.lag = 1;
    m.raw.assign(16, 0.0);
    m.raw[0] = 0.2;
    m.smooth = m.raw;
    m.mask.assign(16, 1);
    m.smoothed = true;
    const auto model = lptime::CopulaModel::serial(series, std::move(m));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lptime::sample_conditional(model, 0.9, 10000, 7));
    }
}
BENCHMARK(BM_ConditionalSampling);

void BM_CopulaGrid(benchmark::State& state) {
    const auto series =
        lptime::lp_transform(lptime::SeriesSample(gaussian(20000, 5)), 4);
    const auto model = lptime::CopulaModel::serial(
        series, lptime::bic_smooth(lptime::lp_comoment_matrix(series, 1)));
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        double acc = 0.0;
        for (int i = 1; i <= n; ++i) {
            for (int l = 1; l <= n; ++l) {
                acc += lptime::copula_density(model, (i - 0.5) / n, (l - 0.5) / n);
            }
        }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_CopulaGrid)->Arg(101);

} // namespace

BENCHMARK_MAIN();
