#include "etdclust/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "etdclust/config.hpp"
#include "etdclust/csv.hpp"
#include "etdclust/parallel.hpp"
#include "etdclust/rng.hpp"

namespace etdclust {

namespace {

/// Keep only variable v (1-based) of every sample.
std::vector<SparseSample> project_variable(std::span<const SparseSample> samples, int v) {
    std::vector<SparseSample> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        std::vector<double> values(s.size());
        for (int k = 0; k < s.size(); ++k) values[k] = s.value(k)[v - 1];
        out.emplace_back(s.id(), s.times(), std::move(values), 1);
    }
    return out;
}

/// Cluster one dataset with the requested method and evaluate against truth.
ReplicateMetrics evaluate_dataset(const ExperimentConfig& config, ClusterMethod method,
                                  std::span<const SparseSample> samples,
                                  std::span<const int> truth) {
    const AlignedDataset aligned = align_all(samples);
    const DistanceMatrix distances = compute_distance_matrix(aligned);

    std::vector<int> predicted;
    if (method == ClusterMethod::rtlp) {
        predicted = rtlp_cluster(distances, config.rtlp).labels();
    } else {
        BaselineConfig baseline = config.baseline;
        baseline.method = method == ClusterMethod::kmedoids ? BaselineMethod::kmedoids
                                                            : BaselineMethod::hierarchical;
        baseline.k_max = std::min(baseline.k_max, distances.size() - 1);
        const KSelection sel = select_k(distances, baseline);
        predicted.assign(samples.size(), 0);
        for (std::size_t c = 0; c < sel.partition.sets.size(); ++c) {
            for (int i : sel.partition.sets[c]) predicted[i] = static_cast<int>(c);
        }
    }

    const EvalReport report = evaluate_labels(truth, predicted);
    ReplicateMetrics metrics;
    metrics.ari = report.ari;
    metrics.ari_squared = report.ari_squared;
    if (method == ClusterMethod::rtlp) {
        metrics.p_c = report.p_c;
        metrics.p_f = report.p_f;
    }
    return metrics;
}

struct Accumulator {
    int n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sum_sq += x * x;
    }
    double mean() const { return n > 0 ? sum / n : 0.0; }
    double sd() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = (sum_sq - n * m * m) / (n - 1);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
};

std::string percent_one_decimal(double fraction) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(1) << fraction * 100.0;
    return out.str();
}

std::string fixed3(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3) << v;
    return out.str();
}

}  // namespace

std::string to_string(ClusterMethod method) {
    switch (method) {
        case ClusterMethod::rtlp: return "rtlp";
        case ClusterMethod::kmedoids: return "kmedoids";
        case ClusterMethod::hierarchical: return "hierarchical";
    }
    return "?";
}

ClusterMethod parse_cluster_method(const std::string& name) {
    if (name == "rtlp") return ClusterMethod::rtlp;
    if (name == "kmedoids") return ClusterMethod::kmedoids;
    if (name == "hier" || name == "hierarchical") return ClusterMethod::hierarchical;
    throw std::invalid_argument("unknown method '" + name +
                                "' (expected rtlp, kmedoids or hier)");
}

std::uint64_t replicate_seed(std::uint64_t master, sim::Scenario scenario,
                             sim::Contamination contamination, double p_curve, int replicate) {
    const std::uint64_t tag = (static_cast<std::uint64_t>(scenario) << 8) |
                              static_cast<std::uint64_t>(contamination);
    const std::uint64_t curve_key =
        static_cast<std::uint64_t>(std::llround(p_curve * 1e6));
    const std::uint64_t base = CounterRng::derive_key(master, tag, curve_key,
                                                      static_cast<std::uint64_t>(replicate));
    return base;
}

ReplicateMetrics run_replicate(const ExperimentConfig& config, const CellKey& key,
                               std::uint64_t seed) {
    sim::ScenarioSpec spec = config.scenario_base;
    spec.id = key.scenario;
    spec.seed = seed;
    sim::ContaminationSpec contamination{key.contamination, config.outlier_rate};
    sim::SparsitySpec sparsity{config.p_size, key.p_curve};
    const sim::LabeledDataset dataset = sim::generate(spec, contamination, sparsity);

    if (!config.univariate) {
        return evaluate_dataset(config, key.method, dataset.samples, dataset.labels);
    }

    // marginal mode: cluster each variable alone, average the metrics
    const int p = spec.dim;
    Accumulator ari, ari2, pc, pf;
    for (int v = 1; v <= p; ++v) {
        const auto projected = project_variable(dataset.samples, v);
        const ReplicateMetrics m =
            evaluate_dataset(config, key.method, projected, dataset.labels);
        ari.add(m.ari);
        ari2.add(m.ari_squared);
        if (m.p_c) pc.add(*m.p_c);
        if (m.p_f) pf.add(*m.p_f);
    }
    ReplicateMetrics metrics;
    metrics.ari = ari.mean();
    metrics.ari_squared = ari2.mean();
    if (pc.n > 0) metrics.p_c = pc.mean();
    if (pf.n > 0) metrics.p_f = pf.mean();
    return metrics;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    ExperimentResult result;
    for (sim::Scenario s : config.scenarios) {
        for (sim::Contamination c : config.contaminations) {
            for (double pc : config.p_curves) {
                for (ClusterMethod m : config.methods) {
                    result.keys.push_back(CellKey{s, c, pc, m});
                }
            }
        }
    }
    result.cells.resize(result.keys.size());

    parallel_blocks(result.keys.size(), workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t cell = begin; cell < end; ++cell) {
            const CellKey& key = result.keys[cell];
            CellStats& stats = result.cells[cell];
            try {
                Accumulator ari2, pc, pf;
                for (int r = 0; r < config.replicates; ++r) {
                    const std::uint64_t seed = replicate_seed(
                        config.seed, key.scenario, key.contamination, key.p_curve, r);
                    const ReplicateMetrics m = run_replicate(config, key, seed);
                    ari2.add(m.ari_squared);
                    if (m.p_c) pc.add(*m.p_c);
                    if (m.p_f) pf.add(*m.p_f);
                }
                stats.replicates = ari2.n;
                stats.mean_ari2 = ari2.mean();
                stats.sd_ari2 = ari2.sd();
                if (pc.n > 0) {
                    stats.mean_pc = pc.mean();
                    stats.sd_pc = pc.sd();
                }
                if (pf.n > 0) {
                    stats.mean_pf = pf.mean();
                    stats.sd_pf = pf.sd();
                }
            } catch (const std::exception& e) {
                stats.failed = true;
                stats.error = e.what();
            }
        }
    });
    return result;
}

std::string format_experiment_table(const ExperimentConfig& config,
                                    const ExperimentResult& result) {
    std::ostringstream out;
    out << "# replicated simulation cells, R = " << config.replicates
        << ", mode = " << (config.univariate ? "univariate" : "multivariate") << "\n";
    out << "# N = " << config.scenario_base.n_samples
        << ", K = " << config.scenario_base.n_clusters
        << ", T = " << config.scenario_base.grid_size
        << ", p = " << config.scenario_base.dim
        << ", outlier rate = " << percent_one_decimal(config.outlier_rate) << "%"
        << ", p_size = " << percent_one_decimal(config.p_size) << "%\n";
    out << "scenario  contamination  p_curve  method        ARI^2 (sd)      p_c % (sd)     p_f % (sd)\n";
    for (std::size_t i = 0; i < result.keys.size(); ++i) {
        const CellKey& key = result.keys[i];
        const CellStats& cell = result.cells[i];
        out << std::left << std::setw(10) << io::to_string(key.scenario)
            << std::setw(15) << io::to_string(key.contamination)
            << std::setw(9) << (percent_one_decimal(key.p_curve) + "%")
            << std::setw(14) << to_string(key.method);
        if (cell.failed) {
            out << "FAILED: " << cell.error << "\n";
            continue;
        }
        out << std::setw(16) << (fixed3(cell.mean_ari2) + " (" + fixed3(cell.sd_ari2) + ")");
        if (cell.mean_pc) {
            out << std::setw(15)
                << (percent_one_decimal(*cell.mean_pc) + " (" +
                    percent_one_decimal(cell.sd_pc.value_or(0.0)) + ")");
        } else {
            out << std::setw(15) << "-";
        }
        if (cell.mean_pf) {
            out << (percent_one_decimal(*cell.mean_pf) + " (" +
                    percent_one_decimal(cell.sd_pf.value_or(0.0)) + ")");
        } else {
            out << "-";
        }
        out << "\n";
    }
    return out.str();
}

std::string format_experiment_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << "scenario,contamination,p_curve,method,replicates,mean_ari2,sd_ari2,"
           "mean_pc,sd_pc,mean_pf,sd_pf,failed\n";
    for (std::size_t i = 0; i < result.keys.size(); ++i) {
        const CellKey& key = result.keys[i];
        const CellStats& cell = result.cells[i];
        out << io::to_string(key.scenario) << ',' << io::to_string(key.contamination) << ','
            << io::format_double(key.p_curve) << ',' << to_string(key.method) << ','
            << cell.replicates << ',' << io::format_double(cell.mean_ari2) << ','
            << io::format_double(cell.sd_ari2) << ',';
        out << (cell.mean_pc ? io::format_double(*cell.mean_pc) : "") << ','
            << (cell.sd_pc ? io::format_double(*cell.sd_pc) : "") << ','
            << (cell.mean_pf ? io::format_double(*cell.mean_pf) : "") << ','
            << (cell.sd_pf ? io::format_double(*cell.sd_pf) : "") << ','
            << (cell.failed ? "1" : "0") << "\n";
    }
    return out.str();
}

}  // namespace etdclust
