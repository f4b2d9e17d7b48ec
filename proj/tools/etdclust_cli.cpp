// Command-line front end: simulate, distance, cluster, experiment.

#include <CLI11.hpp>

#include <chrono>
#include <iomanip>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "etdclust/baselines.hpp"
#include "etdclust/config.hpp"
#include "etdclust/csv.hpp"
#include "etdclust/distance.hpp"
#include "etdclust/errors.hpp"
#include "etdclust/experiment.hpp"
#include "etdclust/metrics.hpp"
#include "etdclust/report.hpp"
#include "etdclust/rtlp.hpp"
#include "etdclust/sample.hpp"
#include "etdclust/simulate.hpp"

namespace fs = std::filesystem;
using namespace etdclust;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

fs::path with_suffix(const fs::path& path, const std::string& suffix,
                     const std::string& extension) {
    fs::path out = path;
    out.replace_filename(path.stem().string() + suffix + extension);
    return out;
}

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << text;
}

int run_simulate(const fs::path& config_path, const fs::path& out_path,
                 std::optional<std::uint64_t> seed, const std::optional<fs::path>& truth_path) {
    io::SimConfig config = io::SimConfig::from_file(config_path);
    if (seed) config.scenario.seed = *seed;

    const Stopwatch timer;
    const sim::LabeledDataset dataset =
        sim::generate(config.scenario, config.contamination, config.sparsity);

    io::write_long_csv(out_path, dataset.samples);
    std::vector<std::string> ids;
    ids.reserve(dataset.samples.size());
    for (const auto& s : dataset.samples) ids.push_back(s.id());
    const fs::path truth = truth_path.value_or(with_suffix(out_path, "_truth", ".csv"));
    io::write_truth_csv(truth, ids, dataset.labels);

    std::cout << "wrote " << dataset.samples.size() << " curves to " << out_path.string()
              << " and truth to " << truth.string() << " ("
              << dataset.outlier_indices().size() << " outliers, " << timer.seconds()
              << " s)\n";
    return 0;
}

int run_distance(const fs::path& data_path, const fs::path& out_path, int workers,
                 bool normalize) {
    const Stopwatch timer;
    const auto samples = io::read_long_csv(data_path, normalize);
    if (samples.size() < 2) throw DataError("distance: need at least 2 curves");
    const AlignedDataset aligned = align_all(samples);
    const DistanceMatrix matrix = compute_distance_matrix(aligned, workers);

    std::vector<std::string> ids;
    ids.reserve(samples.size());
    for (const auto& s : samples) ids.push_back(s.id());
    io::write_distance_csv(out_path, matrix, ids);
    std::cout << "wrote " << matrix.size() << "x" << matrix.size() << " distance matrix to "
              << out_path.string() << " (" << timer.seconds() << " s)\n";
    return 0;
}

int run_cluster(const fs::path& data_path, const std::string& method_name,
                const std::optional<fs::path>& config_path,
                const std::optional<fs::path>& truth_path, const fs::path& out_path,
                const std::optional<fs::path>& series_path,
                const std::optional<fs::path>& distances_path, std::optional<int> fixed_k,
                int workers, bool normalize) {
    const ClusterMethod method = parse_cluster_method(method_name);
    io::MethodConfig config = config_path ? io::MethodConfig::from_file(*config_path)
                                          : io::MethodConfig::defaults();
    if (fixed_k) config.fixed_k = fixed_k;
    config.rtlp.workers = workers;
    config.baseline.workers = workers;

    const Stopwatch timer;
    const auto samples = io::read_long_csv(data_path, normalize);
    if (samples.size() < 2) throw DataError("cluster: need at least 2 curves");
    const int n = static_cast<int>(samples.size());

    DistanceMatrix distances(n);
    if (distances_path) {
        auto [matrix, ids] = io::read_distance_csv(*distances_path);
        if (matrix.size() != n) {
            throw DataError("cluster: distance matrix size does not match the dataset");
        }
        for (int i = 0; i < n; ++i) {
            if (ids[i] != samples[i].id()) {
                throw DataError("cluster: distance matrix ids do not match the dataset");
            }
        }
        distances = std::move(matrix);
    } else {
        distances = compute_distance_matrix(align_all(samples), workers);
    }

    io::RunReport report;
    report.method = to_string(method);
    report.n_samples = n;
    std::vector<int> predicted(n, 0);

    if (method == ClusterMethod::rtlp) {
        const ClusteringResult result = rtlp_cluster(distances, config.rtlp);
        report.theta_star = result.theta_star;
        report.silhouette_trace = result.silhouette_trace;
        for (std::size_t c = 0; c < result.primary.sets.size(); ++c) {
            io::RunReport::Cluster cluster;
            cluster.size = static_cast<int>(result.primary.sets[c].size());
            cluster.center = samples[result.primary.cores[c]].id();
            for (int i : result.primary.sets[c]) cluster.members.push_back(samples[i].id());
            report.clusters.push_back(std::move(cluster));
        }
        for (int i : result.outliers) report.outliers.push_back(samples[i].id());
        predicted = result.labels();
        if (result.no_primary) {
            std::cout << "warning: no cluster exceeded the size guard; "
                         "every curve is reported as an outlier\n";
        }
    } else {
        BaselineConfig baseline = config.baseline;
        baseline.method = method == ClusterMethod::kmedoids ? BaselineMethod::kmedoids
                                                            : BaselineMethod::hierarchical;
        Partition partition;
        if (config.fixed_k) {
            partition = baseline.method == BaselineMethod::kmedoids
                            ? k_medoids(distances, *config.fixed_k, baseline)
                            : hierarchical_clustering(distances, *config.fixed_k, baseline);
            report.k_star = *config.fixed_k;
        } else {
            baseline.k_max = std::min(baseline.k_max, n - 1);
            if (baseline.k_min > baseline.k_max) {
                throw std::invalid_argument("cluster: dataset too small for the k range");
            }
            KSelection sel = select_k(distances, baseline);
            if (sel.degenerate) {
                std::cout << "warning: degenerate silhouettes, smallest k returned\n";
            }
            report.k_star = sel.k;
            for (const auto& [k, s] : sel.silhouettes) {
                report.silhouette_trace.emplace_back(static_cast<double>(k), s);
            }
            partition = std::move(sel.partition);
        }
        for (std::size_t c = 0; c < partition.sets.size(); ++c) {
            io::RunReport::Cluster cluster;
            cluster.size = static_cast<int>(partition.sets[c].size());
            cluster.center = samples[partition.cores[c]].id();
            for (int i : partition.sets[c]) {
                cluster.members.push_back(samples[i].id());
                predicted[i] = static_cast<int>(c);
            }
            report.clusters.push_back(std::move(cluster));
        }
    }

    if (truth_path) {
        const auto truth_rows = io::read_truth_csv(*truth_path);
        std::vector<int> truth(n);
        std::vector<char> seen(n, 0);
        for (const auto& [id, label] : truth_rows) {
            bool matched = false;
            for (int i = 0; i < n; ++i) {
                if (samples[i].id() == id) {
                    truth[i] = label;
                    seen[i] = 1;
                    matched = true;
                    break;
                }
            }
            if (!matched) throw DataError("truth: unknown curve id '" + id + "'");
        }
        for (int i = 0; i < n; ++i) {
            if (!seen[i]) throw DataError("truth: missing curve id '" + samples[i].id() + "'");
        }
        report.metrics = evaluate_labels(truth, predicted);
    }

    report.save(out_path);
    const fs::path series = series_path.value_or(with_suffix(out_path, "_silhouette", ".csv"));
    report.save_silhouette_csv(series);

    std::cout << "method " << report.method;
    if (report.theta_star) std::cout << ", theta* = " << io::format_double(*report.theta_star);
    if (report.k_star) std::cout << ", k* = " << *report.k_star;
    std::cout << ", " << report.clusters.size() << " clusters, " << report.outliers.size()
              << " outliers";
    if (report.metrics) {
        std::cout << ", ARI = " << io::format_double(report.metrics->ari);
        std::cout << std::fixed << std::setprecision(1);
        if (report.metrics->p_c) {
            std::cout << ", p_c = " << 100.0 * *report.metrics->p_c << "%";
        }
        std::cout << ", p_f = " << 100.0 * report.metrics->p_f << "%";
        std::cout.unsetf(std::ios::floatfield);
    }
    std::cout << " (" << timer.seconds() << " s)\n";
    std::cout << "report: " << out_path.string() << ", series: " << series.string() << "\n";
    return 0;
}

ExperimentConfig experiment_from_file(const fs::path& path) {
    io::KeyValueFile file = io::KeyValueFile::parse(path);
    ExperimentConfig config;
    if (auto v = file.take_list("scenarios")) {
        config.scenarios.clear();
        for (const auto& name : *v) config.scenarios.push_back(io::parse_scenario(name));
    }
    if (auto v = file.take_list("contaminations")) {
        config.contaminations.clear();
        for (const auto& name : *v) {
            config.contaminations.push_back(io::parse_contamination(name));
        }
    }
    if (auto v = file.take_double_list("p_curves")) config.p_curves = *v;
    if (auto v = file.take_list("methods")) {
        config.methods.clear();
        for (const auto& name : *v) config.methods.push_back(parse_cluster_method(name));
    }
    if (auto v = file.take_int("replicates")) config.replicates = *v;
    if (auto v = file.take_u64("seed")) config.seed = *v;
    if (auto v = file.take_int("n_clusters")) config.scenario_base.n_clusters = *v;
    if (auto v = file.take_int("n_samples")) config.scenario_base.n_samples = *v;
    if (auto v = file.take_int("grid_size")) config.scenario_base.grid_size = *v;
    if (auto v = file.take_int("dim")) config.scenario_base.dim = *v;
    if (auto v = file.take_double_list("sigma2")) config.scenario_base.sigma2 = *v;
    if (auto v = file.take_double("eta")) config.scenario_base.eta = *v;
    if (auto v = file.take_double("outlier_rate")) config.outlier_rate = *v;
    if (auto v = file.take_double("p_size")) config.p_size = *v;
    if (auto v = file.take("mode")) {
        if (*v == "univariate") config.univariate = true;
        else if (*v == "multivariate") config.univariate = false;
        else throw ConfigError(path.string() + ": mode must be multivariate or univariate");
    }
    if (auto v = file.take_double("p_min")) config.rtlp.p_min = *v;
    if (auto v = file.take_double("alpha")) config.rtlp.alpha = *v;
    if (auto v = file.take_int("k_min")) config.baseline.k_min = *v;
    if (auto v = file.take_int("k_max")) config.baseline.k_max = *v;
    if (auto v = file.take("linkage")) config.baseline.linkage = io::parse_linkage(*v);
    file.finish();
    config.rtlp.validate();
    if (config.replicates < 1) throw ConfigError(path.string() + ": replicates must be >= 1");
    return config;
}

int run_experiment_cmd(const fs::path& config_path, std::optional<int> replicates,
                       std::optional<std::uint64_t> seed, const fs::path& out_path,
                       const std::optional<fs::path>& cells_path, int workers) {
    ExperimentConfig config = experiment_from_file(config_path);
    if (replicates) config.replicates = *replicates;
    if (seed) config.seed = *seed;

    const Stopwatch timer;
    const ExperimentResult result = run_experiment(config, workers);
    const std::string table = format_experiment_table(config, result);
    write_text_file(out_path, table);
    const fs::path cells = cells_path.value_or(with_suffix(out_path, "_cells", ".csv"));
    write_text_file(cells, format_experiment_csv(result));

    std::cout << table;
    std::cout << "wrote " << out_path.string() << " and " << cells.string() << " ("
              << timer.seconds() << " s)\n";
    for (const auto& cell : result.cells) {
        if (cell.failed) return kExitNumeric;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elastic-time-distance clustering of sparse multivariate functional data"};
    app.require_subcommand(1);

    std::string config_file;
    std::string data_file;
    std::string out_file;
    std::string method = "rtlp";
    std::string truth_file;
    std::string series_file;
    std::string cells_file;
    std::string distances_file;
    std::uint64_t seed_value = 0;
    bool seed_given = false;
    int workers = 1;
    bool normalize = false;
    int replicates_value = 0;
    int fixed_k_value = 0;

    auto* simulate = app.add_subcommand("simulate", "Generate a labeled synthetic dataset");
    simulate->add_option("config", config_file, "simulation config file")->required();
    simulate->add_option("--out", out_file, "output long CSV")->required();
    simulate->add_option("--seed", seed_value, "master seed (overrides config)")
        ->each([&](const std::string&) { seed_given = true; });
    simulate->add_option("--truth-out", truth_file, "truth CSV (default: <out>_truth.csv)");
    simulate->add_option("--workers", workers,
                         "accepted for symmetry; generation is single-pass");

    auto* distance = app.add_subcommand("distance", "Compute the pairwise distance matrix");
    distance->add_option("data", data_file, "long CSV input")->required();
    distance->add_option("--out", out_file, "output distance CSV")->required();
    distance->add_option("--workers", workers, "worker threads");
    distance->add_flag("--normalize-time", normalize, "map each curve's times onto [0,1]");

    auto* cluster = app.add_subcommand("cluster", "Cluster curves and write a report");
    cluster->add_option("data", data_file, "long CSV input")->required();
    cluster->add_option("--method", method, "rtlp | kmedoids | hier");
    cluster->add_option("--config", config_file, "method config file");
    cluster->add_option("--truth", truth_file, "truth CSV for evaluation");
    cluster->add_option("--out", out_file, "report path")->required();
    cluster->add_option("--series", series_file,
                        "silhouette series CSV (default: <out>_silhouette.csv)");
    cluster->add_option("--distances", distances_file,
                        "precomputed distance matrix CSV (skips recomputation)");
    cluster->add_option("--k", fixed_k_value, "fixed k for the baseline methods");
    cluster->add_option("--workers", workers, "worker threads");
    cluster->add_flag("--normalize-time", normalize, "map each curve's times onto [0,1]");

    auto* experiment = app.add_subcommand("experiment", "Run a replicated simulation grid");
    experiment->add_option("config", config_file, "experiment config file")->required();
    experiment->add_option("--replicates", replicates_value, "replicates per cell");
    experiment->add_option("--seed", seed_value, "master seed (overrides config)")
        ->each([&](const std::string&) { seed_given = true; });
    experiment->add_option("--out", out_file, "output table path")->required();
    experiment->add_option("--cells-csv", cells_file,
                           "per-cell CSV (default: <out>_cells.csv)");
    experiment->add_option("--workers", workers, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (workers < 1) throw std::invalid_argument("workers must be >= 1");
        std::optional<std::uint64_t> seed;
        if (seed_given) seed = seed_value;
        if (simulate->parsed()) {
            return run_simulate(config_file, out_file, seed,
                                truth_file.empty() ? std::nullopt
                                                   : std::optional<fs::path>(truth_file));
        }
        if (distance->parsed()) {
            return run_distance(data_file, out_file, workers, normalize);
        }
        if (cluster->parsed()) {
            return run_cluster(data_file, method,
                               config_file.empty() ? std::nullopt
                                                   : std::optional<fs::path>(config_file),
                               truth_file.empty() ? std::nullopt
                                                  : std::optional<fs::path>(truth_file),
                               out_file,
                               series_file.empty() ? std::nullopt
                                                   : std::optional<fs::path>(series_file),
                               distances_file.empty() ? std::nullopt
                                                      : std::optional<fs::path>(distances_file),
                               fixed_k_value > 0 ? std::optional<int>(fixed_k_value)
                                                 : std::nullopt,
                               workers, normalize);
        }
        if (experiment->parsed()) {
            return run_experiment_cmd(
                config_file,
                replicates_value > 0 ? std::optional<int>(replicates_value) : std::nullopt,
                seed, out_file,
                cells_file.empty() ? std::nullopt : std::optional<fs::path>(cells_file),
                workers);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
