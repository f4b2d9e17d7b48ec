#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "etdclust/experiment.hpp"
#include "etdclust/metrics.hpp"

using namespace etdclust;

namespace {

/// Small, fast experiment shape shared by the tests.
ExperimentConfig small_config() {
    ExperimentConfig config;
    config.scenario_base.n_samples = 30;
    config.scenario_base.n_clusters = 3;
    config.scenario_base.grid_size = 15;
    config.scenario_base.dim = 3;
    config.scenarios = {sim::Scenario::S4};
    config.contaminations = {sim::Contamination::C1};
    config.p_curves = {0.0};
    config.methods = {ClusterMethod::rtlp};
    config.replicates = 2;
    config.seed = 321;
    config.baseline.k_max = 6;
    return config;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("replicate seeds are stable and method independent") {
    const auto s1 = replicate_seed(9, sim::Scenario::S4, sim::Contamination::C1, 0.3, 0);
    const auto s2 = replicate_seed(9, sim::Scenario::S4, sim::Contamination::C1, 0.3, 0);
    CHECK(s1 == s2);
    CHECK(s1 != replicate_seed(9, sim::Scenario::S4, sim::Contamination::C1, 0.3, 1));
    CHECK(s1 != replicate_seed(9, sim::Scenario::S4, sim::Contamination::C2, 0.3, 0));
    CHECK(s1 != replicate_seed(9, sim::Scenario::S5, sim::Contamination::C1, 0.3, 0));
    CHECK(s1 != replicate_seed(10, sim::Scenario::S4, sim::Contamination::C1, 0.3, 0));
}

TEST_CASE("a single replicate reproduces the manual pipeline") {
    const ExperimentConfig config = small_config();
    const CellKey key{sim::Scenario::S4, sim::Contamination::C1, 0.0, ClusterMethod::rtlp};
    const std::uint64_t seed =
        replicate_seed(config.seed, key.scenario, key.contamination, key.p_curve, 0);
    const ReplicateMetrics from_runner = run_replicate(config, key, seed);

    // same steps by hand
    sim::ScenarioSpec spec = config.scenario_base;
    spec.id = key.scenario;
    spec.seed = seed;
    const sim::LabeledDataset data =
        sim::generate(spec, {key.contamination, config.outlier_rate},
                      {config.p_size, key.p_curve});
    const DistanceMatrix d = compute_distance_matrix(align_all(data.samples));
    const ClusteringResult result = rtlp_cluster(d, config.rtlp);
    const EvalReport report = evaluate_labels(data.labels, result.labels());

    CHECK(from_runner.ari == report.ari);
    CHECK(from_runner.ari_squared == report.ari_squared);
    CHECK(from_runner.p_c == report.p_c);
    REQUIRE(from_runner.p_f.has_value());
    CHECK(*from_runner.p_f == report.p_f);
}

TEST_CASE("experiment grid enumerates cells in a fixed order") {
    ExperimentConfig config = small_config();
    config.contaminations = {sim::Contamination::C1, sim::Contamination::C5};
    config.p_curves = {0.0, 0.3};
    config.methods = {ClusterMethod::rtlp, ClusterMethod::kmedoids};
    config.replicates = 1;
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.keys.size() == 8);
    CHECK(result.keys[0].contamination == sim::Contamination::C1);
    CHECK(result.keys[0].p_curve == 0.0);
    CHECK(result.keys[0].method == ClusterMethod::rtlp);
    CHECK(result.keys[1].method == ClusterMethod::kmedoids);
    CHECK(result.keys[2].p_curve == 0.3);
    CHECK(result.keys[4].contamination == sim::Contamination::C5);
    for (const auto& cell : result.cells) {
        CHECK_FALSE(cell.failed);
        CHECK(cell.replicates == 1);
    }
}

TEST_CASE("baseline cells report no outlier rates") {
    ExperimentConfig config = small_config();
    config.methods = {ClusterMethod::hierarchical};
    config.replicates = 1;
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.cells.size() == 1);
    CHECK_FALSE(result.cells[0].mean_pc.has_value());
    CHECK_FALSE(result.cells[0].mean_pf.has_value());
    CHECK(result.cells[0].mean_ari2 >= 0.0);
}

TEST_CASE("experiment results are worker-count independent") {
    ExperimentConfig config = small_config();
    config.methods = {ClusterMethod::rtlp, ClusterMethod::kmedoids};
    const ExperimentResult serial = run_experiment(config, 1);
    const ExperimentResult parallel = run_experiment(config, 4);
    REQUIRE(serial.cells.size() == parallel.cells.size());
    for (std::size_t i = 0; i < serial.cells.size(); ++i) {
        CHECK(serial.cells[i].mean_ari2 == parallel.cells[i].mean_ari2);
        CHECK(serial.cells[i].sd_ari2 == parallel.cells[i].sd_ari2);
        CHECK(serial.cells[i].mean_pc == parallel.cells[i].mean_pc);
        CHECK(serial.cells[i].mean_pf == parallel.cells[i].mean_pf);
    }
    CHECK(format_experiment_csv(serial) == format_experiment_csv(parallel));
}

TEST_CASE("univariate mode averages per-variable runs") {
    ExperimentConfig config = small_config();
    config.univariate = true;
    config.replicates = 1;
    const CellKey key{sim::Scenario::S4, sim::Contamination::C1, 0.0, ClusterMethod::rtlp};
    const std::uint64_t seed =
        replicate_seed(config.seed, key.scenario, key.contamination, key.p_curve, 0);
    const ReplicateMetrics uni = run_replicate(config, key, seed);
    CHECK(uni.ari_squared >= 0.0);
    CHECK(uni.ari_squared <= 1.0);
    REQUIRE(uni.p_c.has_value());

    config.univariate = false;
    const ReplicateMetrics multi = run_replicate(config, key, seed);
    // same data, different pipelines; both must be valid metric values
    CHECK(std::abs(multi.ari) <= 1.0);
}

TEST_CASE("failed cells are marked and do not stop the batch") {
    ExperimentConfig config = small_config();
    config.scenario_base.dim = 2;  // S4 requires 3 variables, so this cell fails
    config.methods = {ClusterMethod::rtlp};
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.cells.size() == 1);
    CHECK(result.cells[0].failed);
    CHECK_FALSE(result.cells[0].error.empty());
    const std::string table = format_experiment_table(config, result);
    CHECK(table.find("FAILED") != std::string::npos);
}

TEST_CASE("method names parse both spellings") {
    CHECK(parse_cluster_method("rtlp") == ClusterMethod::rtlp);
    CHECK(parse_cluster_method("kmedoids") == ClusterMethod::kmedoids);
    CHECK(parse_cluster_method("hier") == ClusterMethod::hierarchical);
    CHECK(parse_cluster_method("hierarchical") == ClusterMethod::hierarchical);
    CHECK_THROWS_AS(parse_cluster_method("dbscan"), std::invalid_argument);
}

}  // TEST_SUITE
