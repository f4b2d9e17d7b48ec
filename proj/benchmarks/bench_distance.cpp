#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "etdclust/distance.hpp"
#include "etdclust/rng.hpp"
#include "etdclust/sample.hpp"

namespace {

using namespace etdclust;

AlignedDataset synthetic_aligned(int n, int t, int dim) {
    CounterRng rng(17, RngStream::generic);
    AlignedDataset data{StandardGrid(t), {}, dim};
    for (int i = 0; i < n; ++i) {
        AlignedSample s;
        s.id = "s" + std::to_string(i);
        s.dim = dim;
        s.source_index.assign(t, 0);
        s.values.resize(static_cast<std::size_t>(t) * dim);
        for (double& v : s.values) v = rng.next_uniform(-1.0, 1.0);
        data.samples.push_back(std::move(s));
    }
    return data;
}

void BM_elastic_time_distance(benchmark::State& state) {
    const auto data = synthetic_aligned(2, static_cast<int>(state.range(0)), 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(elastic_time_distance(data.samples[0], data.samples[1]));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_elastic_time_distance)->Arg(50)->Arg(500)->Arg(5000);

void BM_distance_matrix(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int workers = static_cast<int>(state.range(1));
    const auto data = synthetic_aligned(n, 50, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compute_distance_matrix(data, workers));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(n) * (n - 1) / 2);
}
BENCHMARK(BM_distance_matrix)
    ->Args({100, 1})
    ->Args({200, 1})
    ->Args({400, 1})
    ->Args({400, 2})
    ->Args({400, 4});

void BM_distance_quantile(benchmark::State& state) {
    const auto data = synthetic_aligned(static_cast<int>(state.range(0)), 50, 3);
    const DistanceMatrix matrix = compute_distance_matrix(data);
    for (auto _ : state) {
        DistanceSet set(matrix);
        benchmark::DoNotOptimize(set.quantile(0.08));
    }
}
BENCHMARK(BM_distance_quantile)->Arg(150)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
