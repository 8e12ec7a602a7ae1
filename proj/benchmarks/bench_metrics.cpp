#include <benchmark/benchmark.h>

#include "synthetic.hpp"
#include "wkm/metrics.hpp"

namespace {

std::vector<wkm::WeightedPoint> district(std::size_t n) {
    std::vector<wkm::WeightedPoint> pts;
    for (const auto& b : wkm::bench::synthetic_blocks(n, 9)) {
        pts.push_back({b.location, b.pop_est});
    }
    return pts;
}

void BM_MeanPairwiseExact(benchmark::State& state) {
    const auto pts = district(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::district_mean_pairwise(pts));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MeanPairwiseExact)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oNSquared);

void BM_MeanPairwiseSampled(benchmark::State& state) {
    const auto pts = district(50000);
    const auto pairs = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::district_mean_pairwise_sampled(pts, pairs, 17));
    }
}
BENCHMARK(BM_MeanPairwiseSampled)->Arg(10000)->Arg(100000);

void BM_Compactness(benchmark::State& state) {
    const auto blocks = wkm::bench::synthetic_blocks(20000, 11);
    std::vector<int> assignment(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        assignment[i] = static_cast<int>(i % 10);
    }
    const auto mode = wkm::CompactnessMode::sampled(20000, 3);
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(wkm::compactness(assignment, 10, blocks, mode, threads));
    }
}
BENCHMARK(BM_Compactness)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
