#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etdclust/metrics.hpp"

namespace etdclust::io {

/// Result of one cluster command, serializable to a sectioned text file
/// that parses back losslessly. Wall-clock timing is printed to the console
/// by the CLI and deliberately kept out of the file so reruns with the same
/// seed produce byte-identical artifacts.
struct RunReport {
    std::string method;  // rtlp | kmedoids | hierarchical
    int n_samples = 0;
    std::optional<double> theta_star;  // rtlp
    std::optional<int> k_star;         // baselines

    struct Cluster {
        int size = 0;
        std::string center;
        std::vector<std::string> members;
    };
    std::vector<Cluster> clusters;
    std::vector<std::string> outliers;

    /// (theta, silhouette) for rtlp, (k, silhouette) for baselines.
    std::vector<std::pair<double, double>> silhouette_trace;

    std::optional<EvalReport> metrics;

    std::string to_text() const;
    static RunReport from_text(const std::string& text);

    void save(const std::filesystem::path& path) const;
    static RunReport load(const std::filesystem::path& path);

    /// Silhouette series as CSV ("theta,silhouette" or "k,silhouette").
    void save_silhouette_csv(const std::filesystem::path& path) const;
};

}  // namespace etdclust::io
