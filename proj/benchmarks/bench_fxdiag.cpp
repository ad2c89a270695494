#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "fxdiag/extrema_mtest.hpp"
#include "fxdiag/nig.hpp"
#include "fxdiag/random.hpp"
#include "fxdiag/rescaled_range.hpp"
#include "fxdiag/tail_index.hpp"

namespace {

std::vector<double> normals(std::size_t n, std::uint64_t seed) {
    fxdiag::Engine eng = fxdiag::substream(seed, 0);
    std::normal_distribution<double> normal;
    std::vector<double> xs(n);
    for (auto& x : xs) x = normal(eng);
    return xs;
}

void BM_BesselK1(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(fxdiag::bessel_k1_scaled(x));
}
BENCHMARK(BM_BesselK1)->Arg(1)->Arg(100)->Arg(2000);

void BM_NigPdf(benchmark::State& state) {
    const fxdiag::NigParams p{2.0, 0.5, 1.0, 0.0};
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fxdiag::nig_pdf(x, p));
        x = x > 3.0 ? -3.0 : x + 0.01;
    }
}
BENCHMARK(BM_NigPdf);

void BM_LocalExtrema(benchmark::State& state) {
    const auto xs = normals(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(fxdiag::local_extrema(xs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LocalExtrema)->Arg(1000)->Arg(100000);

void BM_SimulateXi(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fxdiag::simulate_xi(n, 7, 0, 100));
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SimulateXi)->Arg(250)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Calibrate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fxdiag::calibrate(1000, 2000, 7));
}
BENCHMARK(BM_Calibrate)->Unit(benchmark::kMillisecond);

void BM_RsCurve(benchmark::State& state) {
    const auto xs = normals(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(fxdiag::hurst_estimate(fxdiag::rs_curve(xs)));
}
BENCHMARK(BM_RsCurve)->Arg(125)->Arg(8192);

void BM_Hill(benchmark::State& state) {
    const auto xs = normals(100000, 3);
    for (auto _ : state) benchmark::DoNotOptimize(fxdiag::hill(xs, 1000));
}
BENCHMARK(BM_Hill)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
