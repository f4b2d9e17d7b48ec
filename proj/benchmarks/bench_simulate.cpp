#include <benchmark/benchmark.h>

#include "etdclust/bessel.hpp"
#include "etdclust/simulate.hpp"

namespace {

using namespace etdclust;

void BM_modified_bessel_k(benchmark::State& state) {
    double x = 0.013;
    for (auto _ : state) {
        benchmark::DoNotOptimize(modified_bessel_k(0.27, x));
        x = x < 20.0 ? x * 1.7 : 0.013;
    }
}
BENCHMARK(BM_modified_bessel_k);

void BM_matern_covariance(benchmark::State& state) {
    const int t = static_cast<int>(state.range(0));
    const sim::MaternParams params =
        sim::draw_matern_params(3, sim::default_sigma2(3), 1.0, 5);
    const StandardGrid grid(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim::matern_covariance(params, grid));
    }
}
BENCHMARK(BM_matern_covariance)->Arg(50)->Arg(200);

void BM_noise_draw(benchmark::State& state) {
    const sim::MaternParams params =
        sim::draw_matern_params(3, sim::default_sigma2(3), 1.0, 5);
    const sim::NoiseSampler sampler(sim::matern_covariance(params, StandardGrid(50)));
    std::uint64_t index = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.draw(42, index++));
    }
}
BENCHMARK(BM_noise_draw);

void BM_generate_scenario(benchmark::State& state) {
    sim::ScenarioSpec spec;
    spec.id = sim::Scenario::S4;
    spec.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sim::generate(spec, {sim::Contamination::C1, 0.1}, {1.0, 0.3}));
    }
}
BENCHMARK(BM_generate_scenario)->Unit(benchmark::kMillisecond);

}  // namespace
