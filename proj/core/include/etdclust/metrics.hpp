#pragma once

#include <optional>
#include <span>
#include <vector>

namespace etdclust {

/// Clustering evaluation against known truth. Labels are arbitrary ints;
/// -1 marks the outlier class on both sides.
struct EvalReport {
    double ari = 0.0;
    double ari_squared = 0.0;
    std::optional<double> p_c;  // absent when there are no true outliers
    double p_f = 0.0;
    int n_true_outliers = 0;
    int n_detected = 0;
    int n_correct = 0;
    int n_false = 0;
    bool degenerate_ari = false;
};

/// Hubert-Arabie adjusted Rand index from the contingency table. Every
/// distinct label value is one class, so an outlier label forms its own
/// class. When both partitions are degenerate (all singletons or a single
/// cluster) the index is 1 if the partitions are equal and 0 otherwise;
/// `degenerate` reports that this fallback fired.
double adjusted_rand_index(std::span<const int> labels_a, std::span<const int> labels_b,
                           bool* degenerate = nullptr);

/// p_c = |true ∩ detected| / |true| (absent when |true| = 0) and
/// p_f = |detected \ true| / (N - |true|). Index sets must be subsets of
/// 0..n-1; duplicates are ignored.
std::pair<std::optional<double>, double> outlier_rates(std::span<const int> true_outliers,
                                                       std::span<const int> detected,
                                                       int n);

/// Full report for label vectors with -1 as the outlier class.
EvalReport evaluate_labels(std::span<const int> truth, std::span<const int> predicted);

}  // namespace etdclust
