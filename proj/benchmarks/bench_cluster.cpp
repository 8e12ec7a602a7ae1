#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "wkm/cluster.hpp"

namespace {

void BM_Haversine(benchmark::State& state) {
    const auto a = wkm::prepare(wkm::GeoPoint(40.0, -75.0));
    const auto b = wkm::prepare(wkm::GeoPoint(34.05, -118.25));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::haversine_km(a, b));
    }
}
BENCHMARK(BM_Haversine);

void BM_Assign(benchmark::State& state) {
    const auto blocks = wkm::bench::synthetic_blocks(static_cast<std::size_t>(state.range(0)), 1);
    const int k = static_cast<int>(state.range(1));
    const auto centroids = wkm::seed_centroids_kmeanspp(blocks, k, 1);
    std::vector<double> scales(k, 1.0 / k);
    scales[0] *= 0.5;  // force the scaled path
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::assign(blocks, centroids, scales, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Assign)->Args({10000, 10})->Args({100000, 10})->Args({100000, 50});

void BM_Seed(benchmark::State& state) {
    const auto blocks = wkm::bench::synthetic_blocks(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::seed_centroids_kmeanspp(blocks, 10, 3));
    }
}
BENCHMARK(BM_Seed)->Arg(10000)->Arg(100000);

void BM_Run(benchmark::State& state) {
    const auto blocks = wkm::bench::synthetic_blocks(static_cast<std::size_t>(state.range(0)), 4);
    wkm::ClusterParams params;
    params.k = 10;
    params.alpha = 1.0;
    params.beta = 0.5;
    params.seed = 5;
    wkm::RunOptions options;
    options.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::run(blocks, params, options));
    }
}
BENCHMARK(BM_Run)->Args({10000, 1})->Args({100000, 1})->Args({100000, 4})->Unit(benchmark::kMillisecond);

}  // namespace
