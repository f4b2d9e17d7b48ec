#include "etdclust/metrics.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace etdclust {

namespace {

std::vector<int> compact_labels(std::span<const int> labels, int& n_classes) {
    std::map<int, int> ids;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = ids.emplace(labels[i], static_cast<int>(ids.size()));
        out[i] = it->second;
    }
    n_classes = static_cast<int>(ids.size());
    return out;
}

double choose2(double x) { return x * (x - 1.0) / 2.0; }

/// Same-cluster relation comparison, label-permutation invariant.
bool partitions_equal(std::span<const int> a, std::span<const int> b) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((a[i] == a[j]) != (b[i] == b[j])) return false;
        }
    }
    return true;
}

}  // namespace

double adjusted_rand_index(std::span<const int> labels_a, std::span<const int> labels_b,
                           bool* degenerate) {
    if (labels_a.size() != labels_b.size()) {
        throw std::invalid_argument("ari: label vectors differ in length");
    }
    const std::size_t n = labels_a.size();
    if (n < 2) throw std::invalid_argument("ari: need at least 2 samples");
    if (degenerate) *degenerate = false;

    int ra = 0;
    int rb = 0;
    const std::vector<int> a = compact_labels(labels_a, ra);
    const std::vector<int> b = compact_labels(labels_b, rb);

    std::vector<std::vector<long long>> table(ra, std::vector<long long>(rb, 0));
    std::vector<long long> row_sum(ra, 0);
    std::vector<long long> col_sum(rb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++table[a[i]][b[i]];
        ++row_sum[a[i]];
        ++col_sum[b[i]];
    }

    double sum_ij = 0.0;
    for (int i = 0; i < ra; ++i) {
        for (int j = 0; j < rb; ++j) sum_ij += choose2(static_cast<double>(table[i][j]));
    }
    double sum_a = 0.0;
    for (long long s : row_sum) sum_a += choose2(static_cast<double>(s));
    double sum_b = 0.0;
    for (long long s : col_sum) sum_b += choose2(static_cast<double>(s));

    const double expected = sum_a * sum_b / choose2(static_cast<double>(n));
    const double denom = 0.5 * (sum_a + sum_b) - expected;
    if (denom == 0.0) {
        if (degenerate) *degenerate = true;
        return partitions_equal(labels_a, labels_b) ? 1.0 : 0.0;
    }
    return (sum_ij - expected) / denom;
}

std::pair<std::optional<double>, double> outlier_rates(std::span<const int> true_outliers,
                                                       std::span<const int> detected,
                                                       int n) {
    const std::set<int> truth(true_outliers.begin(), true_outliers.end());
    const std::set<int> found(detected.begin(), detected.end());
    for (int i : truth) {
        if (i < 0 || i >= n) throw std::invalid_argument("outlier_rates: index out of range");
    }
    for (int i : found) {
        if (i < 0 || i >= n) throw std::invalid_argument("outlier_rates: index out of range");
    }

    int correct = 0;
    int false_pos = 0;
    for (int i : found) {
        if (truth.count(i)) {
            ++correct;
        } else {
            ++false_pos;
        }
    }

    std::optional<double> p_c;
    if (!truth.empty()) p_c = static_cast<double>(correct) / static_cast<double>(truth.size());
    const int non_outliers = n - static_cast<int>(truth.size());
    const double p_f = non_outliers > 0
                           ? static_cast<double>(false_pos) / static_cast<double>(non_outliers)
                           : 0.0;
    return {p_c, p_f};
}

EvalReport evaluate_labels(std::span<const int> truth, std::span<const int> predicted) {
    if (truth.size() != predicted.size()) {
        throw std::invalid_argument("evaluate_labels: length mismatch");
    }
    EvalReport report;
    report.ari = adjusted_rand_index(truth, predicted, &report.degenerate_ari);
    report.ari_squared = report.ari * report.ari;

    std::vector<int> true_outliers;
    std::vector<int> detected;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        if (truth[i] == -1) true_outliers.push_back(static_cast<int>(i));
        if (predicted[i] == -1) detected.push_back(static_cast<int>(i));
    }
    auto [p_c, p_f] = outlier_rates(true_outliers, detected, static_cast<int>(truth.size()));
    report.p_c = p_c;
    report.p_f = p_f;
    report.n_true_outliers = static_cast<int>(true_outliers.size());
    report.n_detected = static_cast<int>(detected.size());
    for (int i : detected) {
        if (truth[i] == -1) {
            ++report.n_correct;
        } else {
            ++report.n_false;
        }
    }
    return report;
}

}  // namespace etdclust
