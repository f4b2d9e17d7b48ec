#include <benchmark/benchmark.h>

#include "etdclust/baselines.hpp"
#include "etdclust/distance.hpp"
#include "etdclust/rtlp.hpp"
#include "etdclust/simulate.hpp"

namespace {

using namespace etdclust;

DistanceMatrix scenario_distances(int n) {
    sim::ScenarioSpec spec;
    spec.id = sim::Scenario::S4;
    spec.n_samples = n;
    spec.n_clusters = 3;
    spec.seed = 99;
    const auto data = sim::generate(spec, {sim::Contamination::C1, 0.1}, {1.0, 0.3});
    return compute_distance_matrix(align_all(data.samples));
}

void BM_rtlp_full_sweep(benchmark::State& state) {
    const DistanceMatrix d = scenario_distances(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rtlp_cluster(d));
    }
}
BENCHMARK(BM_rtlp_full_sweep)->Arg(90)->Arg(150)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_rtlp_single_theta(benchmark::State& state) {
    const DistanceMatrix d = scenario_distances(150);
    const double threshold = DistanceSet(d).quantile(0.08);
    for (auto _ : state) {
        const Partition groups = first_layer(d, threshold);
        const Partition clusters = second_layer(groups, d, threshold);
        benchmark::DoNotOptimize(recognize(clusters, d, 0.05, 0.87));
    }
}
BENCHMARK(BM_rtlp_single_theta);

void BM_k_medoids(benchmark::State& state) {
    const DistanceMatrix d = scenario_distances(150);
    for (auto _ : state) {
        benchmark::DoNotOptimize(k_medoids(d, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_k_medoids)->Arg(3)->Arg(8);

void BM_hierarchical(benchmark::State& state) {
    const DistanceMatrix d = scenario_distances(150);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hierarchical_clustering(d, 3));
    }
}
BENCHMARK(BM_hierarchical)->Unit(benchmark::kMillisecond);

}  // namespace
