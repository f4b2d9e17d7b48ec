#include "etdclust/rtlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "etdclust/parallel.hpp"

namespace etdclust {

namespace {

/// Quantiles of a degenerate (all-duplicate) distance set can be exactly 0,
/// which would make even a point's own zero distance fail the strict
/// neighbour test. Clamping to the smallest positive double keeps
/// zero-distance pairs neighbours without affecting any real threshold.
double positive_threshold(double quantile_value) {
    return std::max(quantile_value, std::numeric_limits<double>::min());
}

/// Adjacency lists under a strict threshold, excluding self-loops.
std::vector<std::vector<int>> build_adjacency(const DistanceMatrix& distances,
                                              double threshold) {
    const int n = distances.size();
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        const auto row = distances.row(i);
        for (int j = 0; j < n; ++j) {
            if (j != i && row[j] < threshold) adj[i].push_back(j);
        }
    }
    return adj;
}

void sort_sets_by_size(Partition& partition) {
    std::vector<int> order(partition.sets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return partition.sets[a].size() > partition.sets[b].size();
    });
    std::vector<std::vector<int>> sets;
    std::vector<int> cores;
    sets.reserve(order.size());
    cores.reserve(order.size());
    for (int idx : order) {
        sets.push_back(std::move(partition.sets[idx]));
        cores.push_back(partition.cores[idx]);
    }
    partition.sets = std::move(sets);
    partition.cores = std::move(cores);
}

/// Member with the most neighbours inside the set (self included);
/// ties break to the smallest index. Members must be sorted.
int set_core(const std::vector<int>& members, const DistanceMatrix& distances,
             double threshold) {
    int best = members.front();
    int best_count = -1;
    for (int i : members) {
        int count = 0;
        const auto row = distances.row(i);
        for (int j : members) {
            if (row[j] < threshold) ++count;  // counts i itself via the zero diagonal
        }
        if (count > best_count) {
            best_count = count;
            best = i;
        }
    }
    return best;
}

}  // namespace

std::vector<double> RtlpConfig::default_theta_grid() {
    std::vector<double> grid(20);
    for (int i = 0; i < 20; ++i) grid[i] = static_cast<double>(i + 1) / 100.0;
    return grid;
}

void RtlpConfig::validate() const {
    if (theta_grid.empty()) throw std::invalid_argument("rtlp: empty theta grid");
    constexpr double eps = 1e-12;
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
        if (theta_grid[i] < 0.01 - eps || theta_grid[i] > 0.3 + eps) {
            throw std::invalid_argument("rtlp: theta grid values must lie in [0.01, 0.3]");
        }
        if (i > 0 && theta_grid[i] <= theta_grid[i - 1]) {
            throw std::invalid_argument("rtlp: theta grid must be strictly increasing");
        }
    }
    if (!(p_min > 0.0 && p_min <= 0.5)) {
        throw std::invalid_argument("rtlp: p_min must lie in (0, 0.5]");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("rtlp: alpha must lie in (0, 1)");
    }
    if (workers < 1) throw std::invalid_argument("rtlp: workers must be >= 1");
}

std::vector<int> neighbours(int i, std::span<const int> subset,
                            const DistanceMatrix& distances, double threshold) {
    std::vector<int> result;
    const auto row = distances.row(i);
    for (int j : subset) {
        if (row[j] < threshold) result.push_back(j);
    }
    return result;
}

Partition first_layer(const DistanceMatrix& distances, double threshold) {
    const int n = distances.size();
    const auto adj = build_adjacency(distances, threshold);

    std::vector<char> alive(n, 1);
    std::vector<int> count(n);  // alive neighbours excluding self
    for (int i = 0; i < n; ++i) count[i] = static_cast<int>(adj[i].size());

    Partition partition;
    partition.total = n;
    int remaining = n;
    while (remaining > 0) {
        int core = -1;
        int best = -1;
        for (int i = 0; i < n; ++i) {
            if (alive[i] && count[i] > best) {
                best = count[i];
                core = i;
            }
        }
        std::vector<int> group{core};
        for (int j : adj[core]) {
            if (alive[j]) group.push_back(j);
        }
        std::sort(group.begin(), group.end());
        for (int g : group) alive[g] = 0;
        for (int g : group) {
            for (int j : adj[g]) {
                if (alive[j]) --count[j];
            }
        }
        remaining -= static_cast<int>(group.size());
        partition.sets.push_back(std::move(group));
        partition.cores.push_back(core);
    }
    return partition;
}

Partition second_layer(const Partition& groups, const DistanceMatrix& distances,
                       double threshold) {
    const int n = groups.total;
    const auto adj = build_adjacency(distances, threshold);
    const std::size_t m = groups.sets.size();

    Partition clusters;
    clusters.total = n;
    std::vector<char> merged(m, 0);
    std::vector<char> in_union(n, 0);

    for (std::size_t seed = 0; seed < m; ++seed) {
        if (merged[seed]) continue;
        merged[seed] = 1;
        std::vector<int> cluster = groups.sets[seed];

        // neighbour union over the full sample set, computed once per seed
        std::fill(in_union.begin(), in_union.end(), 0);
        for (int y : cluster) {
            in_union[y] = 1;
            for (int j : adj[y]) in_union[j] = 1;
        }

        for (std::size_t g = seed + 1; g < m; ++g) {
            if (merged[g]) continue;
            if (in_union[groups.cores[g]]) {
                merged[g] = 1;
                cluster.insert(cluster.end(), groups.sets[g].begin(), groups.sets[g].end());
            }
        }
        std::sort(cluster.begin(), cluster.end());
        clusters.sets.push_back(std::move(cluster));
        clusters.cores.push_back(0);  // assigned below
    }

    for (std::size_t c = 0; c < clusters.sets.size(); ++c) {
        clusters.cores[c] = set_core(clusters.sets[c], distances, threshold);
    }
    sort_sets_by_size(clusters);
    return clusters;
}

Recognition recognize(const Partition& clusters, const DistanceMatrix& distances,
                      double p_min, double alpha) {
    const int n = clusters.total;
    const double size_guard = static_cast<double>(n) * p_min;

    Recognition result;
    result.primary.total = n;
    std::vector<int> potential;
    for (std::size_t c = 0; c < clusters.sets.size(); ++c) {
        if (static_cast<double>(clusters.sets[c].size()) > size_guard) {
            result.primary.sets.push_back(clusters.sets[c]);
            result.primary.cores.push_back(clusters.cores[c]);
        } else {
            potential.insert(potential.end(), clusters.sets[c].begin(), clusters.sets[c].end());
        }
    }
    std::sort(potential.begin(), potential.end());

    if (result.primary.sets.empty()) {
        result.outliers = std::move(potential);
        result.no_primary = true;
        return result;
    }

    // member-to-core distances per primary cluster, frozen before any
    // reassignment so the test is the same for every potential outlier
    const std::size_t b = result.primary.sets.size();
    std::vector<std::vector<double>> core_dists(b);
    std::vector<double> cutoffs(b);
    for (std::size_t c = 0; c < b; ++c) {
        const int core = result.primary.cores[c];
        auto& dists = core_dists[c];
        dists.reserve(result.primary.sets[c].size());
        for (int y : result.primary.sets[c]) dists.push_back(distances(y, core));
        std::sort(dists.begin(), dists.end());
        cutoffs[c] = interpolated_quantile(dists, alpha);
    }

    for (int x : potential) {
        bool outlier = true;
        double best_cdf = std::numeric_limits<double>::infinity();
        std::size_t best_cluster = 0;
        for (std::size_t c = 0; c < b; ++c) {
            const double d = distances(x, result.primary.cores[c]);
            if (d <= cutoffs[c]) outlier = false;
            const auto& dists = core_dists[c];
            const double cdf =
                static_cast<double>(std::upper_bound(dists.begin(), dists.end(), d) -
                                    dists.begin()) /
                static_cast<double>(dists.size());
            if (cdf < best_cdf) {
                best_cdf = cdf;
                best_cluster = c;
            }
        }
        if (outlier) {
            result.outliers.push_back(x);
        } else {
            auto& members = result.primary.sets[best_cluster];
            members.insert(std::upper_bound(members.begin(), members.end(), x), x);
        }
    }

    sort_sets_by_size(result.primary);
    return result;
}

double average_silhouette(const Recognition& recognition, const DistanceMatrix& distances) {
    const std::size_t b = recognition.primary.sets.size();
    const int n = recognition.primary.total;
    if (b == 0) return 0.0;  // everything is an outlier, each silhouette is 0
    if (b == 1) return -1.0;

    double sum = 0.0;  // outliers contribute 0
    for (std::size_t c = 0; c < b; ++c) {
        const auto& members = recognition.primary.sets[c];
        for (int y : members) {
            const auto row = distances.row(y);
            double within = 0.0;
            for (int l : members) within += row[l];
            double a = members.size() > 1
                           ? within / static_cast<double>(members.size() - 1)
                           : 0.0;
            double separation = std::numeric_limits<double>::infinity();
            for (std::size_t other = 0; other < b; ++other) {
                if (other == c) continue;
                double total = 0.0;
                for (int l : recognition.primary.sets[other]) total += row[l];
                separation =
                    std::min(separation, total / static_cast<double>(
                                                     recognition.primary.sets[other].size()));
            }
            const double denom = std::max(a, separation);
            if (members.size() == 1 || denom <= 0.0) continue;  // silhouette 0
            sum += (separation - a) / denom;
        }
    }
    return sum / static_cast<double>(n);
}

std::vector<int> ClusteringResult::labels() const {
    std::vector<int> out(primary.total, -1);
    for (std::size_t c = 0; c < primary.sets.size(); ++c) {
        for (int y : primary.sets[c]) out[y] = static_cast<int>(c);
    }
    return out;
}

ClusteringResult rtlp_cluster(const DistanceMatrix& distances, const RtlpConfig& config) {
    config.validate();
    const int n = distances.size();
    if (n < 2) throw std::invalid_argument("rtlp: need at least 2 samples");

    const DistanceSet distance_set(distances);
    const std::size_t grid_size = config.theta_grid.size();
    std::vector<double> scores(grid_size);

    parallel_blocks(grid_size, config.workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            const double threshold = positive_threshold(distance_set.quantile(config.theta_grid[t]));
            const Partition groups = first_layer(distances, threshold);
            const Partition clusters = second_layer(groups, distances, threshold);
            const Recognition rec = recognize(clusters, distances, config.p_min, config.alpha);
            scores[t] = average_silhouette(rec, distances);
        }
    });

    std::size_t best = 0;
    for (std::size_t t = 1; t < grid_size; ++t) {
        if (scores[t] > scores[best]) best = t;  // ties keep the smaller theta
    }

    ClusteringResult result;
    result.theta_star = config.theta_grid[best];
    result.silhouette_trace.reserve(grid_size);
    for (std::size_t t = 0; t < grid_size; ++t) {
        result.silhouette_trace.emplace_back(config.theta_grid[t], scores[t]);
    }

    const double threshold = positive_threshold(distance_set.quantile(result.theta_star));
    result.groups = first_layer(distances, threshold);
    result.clusters = second_layer(result.groups, distances, threshold);
    Recognition rec = recognize(result.clusters, distances, config.p_min, config.alpha);
    result.primary = std::move(rec.primary);
    result.outliers = std::move(rec.outliers);
    result.no_primary = rec.no_primary;
    return result;
}

}  // namespace etdclust
