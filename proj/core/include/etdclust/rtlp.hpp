#pragma once

#include <span>
#include <utility>
#include <vector>

#include "etdclust/distance.hpp"

namespace etdclust {

/// Parameters of the robust two-layer partition clustering.
struct RtlpConfig {
    /// Quantile levels swept for the neighbourhood threshold.
    std::vector<double> theta_grid = default_theta_grid();
    /// Minimum primary-cluster size as a fraction of N (p_m).
    double p_min = 0.05;
    /// Quantile level of within-cluster core distances used by the outlier test.
    double alpha = 0.87;
    int workers = 1;

    /// 0.01, 0.02, ..., 0.20. Very large thresholds tend to swallow mild
    /// outliers into clusters with a better average silhouette, so the sweep
    /// defaults to the tighter range; values up to 0.30 are accepted.
    static std::vector<double> default_theta_grid();
    void validate() const;
};

/// Disjoint index sets covering 0..N-1, ordered by non-increasing size,
/// each with a designated core member.
struct Partition {
    std::vector<std::vector<int>> sets;  // members sorted ascending
    std::vector<int> cores;              // cores[i] is a member of sets[i]
    int total = 0;
};

/// Indices j in `subset` with D(i,j) < threshold (strict); includes i itself.
std::vector<int> neighbours(int i, std::span<const int> subset,
                            const DistanceMatrix& distances, double threshold);

/// First-layer partition: repeatedly pick the remaining curve with the most
/// neighbours among the remaining set as a core and emit its neighbour set
/// as a group. Argmax ties break to the smallest index.
Partition first_layer(const DistanceMatrix& distances, double threshold);

/// Second-layer partition: seed each cluster with the most prioritized
/// unmerged group, form the neighbour union of the seed once, then merge
/// every later unmerged group whose core falls in that union. Clusters are
/// reordered by non-increasing size; each cluster's core is its member with
/// the most within-cluster neighbours.
Partition second_layer(const Partition& groups, const DistanceMatrix& distances,
                       double threshold);

/// Primary clusters and outliers after the size guard and the quantile test.
struct Recognition {
    Partition primary;
    std::vector<int> outliers;  // sorted ascending
    /// True when no cluster exceeded the size guard and every sample was
    /// returned as an outlier.
    bool no_primary = false;
};

/// Clusters with more than N*p_min members become primary. Each remaining
/// member X is an outlier iff its distance to every primary core exceeds the
/// alpha-quantile of that cluster's member-to-core distances; otherwise X
/// joins the primary cluster where its distance has the smallest empirical
/// CDF value. Quantiles and CDFs are evaluated against the memberships as
/// produced by the second layer, so the outcome does not depend on the
/// order in which borderline members are reassigned.
Recognition recognize(const Partition& clusters, const DistanceMatrix& distances,
                      double p_min, double alpha);

/// Average silhouette with outliers contributing 0. Returns -1 when fewer
/// than two primary clusters exist (the silhouette separation term is
/// undefined there, and such thresholds must never win the sweep).
double average_silhouette(const Recognition& recognition, const DistanceMatrix& distances);

/// Full output of one clustering run.
struct ClusteringResult {
    Partition primary;
    std::vector<int> outliers;
    Partition groups;    // first layer at theta_star
    Partition clusters;  // second layer at theta_star
    double theta_star = 0.0;
    /// (theta, average silhouette) in grid order.
    std::vector<std::pair<double, double>> silhouette_trace;
    bool no_primary = false;

    /// Per-sample label: 0-based primary cluster index, or -1 for outliers.
    std::vector<int> labels() const;
};

/// Sweeps the theta grid, picks the theta with the highest average
/// silhouette (ties to the smallest theta) and returns the clustering at
/// that threshold. Thresholds are quantiles of the off-diagonal distance
/// set. Requires N >= 2.
ClusteringResult rtlp_cluster(const DistanceMatrix& distances, const RtlpConfig& config = {});

}  // namespace etdclust
