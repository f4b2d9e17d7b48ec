#include "etdclust/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "etdclust/parallel.hpp"

namespace etdclust {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Nearest and second-nearest medoid distances for every point.
struct Assignment {
    std::vector<int> nearest;     // position in the medoid list
    std::vector<double> dnearest;
    std::vector<double> dsecond;
};

Assignment assign_to_medoids(const DistanceMatrix& d, const std::vector<int>& medoids) {
    const int n = d.size();
    Assignment a;
    a.nearest.assign(n, 0);
    a.dnearest.assign(n, kInf);
    a.dsecond.assign(n, kInf);
    for (int i = 0; i < n; ++i) {
        const auto row = d.row(i);
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            const double dist = row[medoids[m]];
            if (dist < a.dnearest[i]) {
                a.dsecond[i] = a.dnearest[i];
                a.dnearest[i] = dist;
                a.nearest[i] = static_cast<int>(m);
            } else if (dist < a.dsecond[i]) {
                a.dsecond[i] = dist;
            }
        }
    }
    return a;
}

Partition partition_from_medoids(const DistanceMatrix& d, const std::vector<int>& medoids) {
    const int n = d.size();
    Partition p;
    p.total = n;
    p.sets.assign(medoids.size(), {});
    for (int i = 0; i < n; ++i) {
        const auto row = d.row(i);
        std::size_t best = 0;
        double best_dist = kInf;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            if (row[medoids[m]] < best_dist) {
                best_dist = row[medoids[m]];
                best = m;
            }
        }
        p.sets[best].push_back(i);
    }
    p.cores = medoids;

    // drop empty clusters (possible with duplicate points), then order by size
    for (std::size_t c = p.sets.size(); c-- > 0;) {
        if (p.sets[c].empty()) {
            p.sets.erase(p.sets.begin() + c);
            p.cores.erase(p.cores.begin() + c);
        }
    }
    std::vector<int> order(p.sets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return p.sets[a].size() > p.sets[b].size(); });
    Partition sorted;
    sorted.total = n;
    for (int idx : order) {
        sorted.sets.push_back(std::move(p.sets[idx]));
        sorted.cores.push_back(p.cores[idx]);
    }
    return sorted;
}

}  // namespace

Partition k_medoids(const DistanceMatrix& d, int k, const BaselineConfig& config) {
    const int n = d.size();
    if (k < 1 || k > n) throw std::invalid_argument("k_medoids: k out of range");

    // BUILD: first medoid minimizes the total distance to all points
    std::vector<int> medoids;
    medoids.reserve(k);
    {
        int best = 0;
        double best_total = kInf;
        for (int i = 0; i < n; ++i) {
            double total = 0.0;
            const auto row = d.row(i);
            for (int j = 0; j < n; ++j) total += row[j];
            if (total < best_total) {
                best_total = total;
                best = i;
            }
        }
        medoids.push_back(best);
    }
    std::vector<char> is_medoid(n, 0);
    is_medoid[medoids[0]] = 1;
    std::vector<double> dnearest(n);
    for (int i = 0; i < n; ++i) dnearest[i] = d(i, medoids[0]);

    // subsequent medoids maximize the total decrease of distance-to-nearest
    while (static_cast<int>(medoids.size()) < k) {
        int best = -1;
        double best_gain = -1.0;
        for (int c = 0; c < n; ++c) {
            if (is_medoid[c]) continue;
            double gain = 0.0;
            const auto row = d.row(c);
            for (int j = 0; j < n; ++j) {
                if (row[j] < dnearest[j]) gain += dnearest[j] - row[j];
            }
            if (gain > best_gain) {
                best_gain = gain;
                best = c;
            }
        }
        medoids.push_back(best);
        is_medoid[best] = 1;
        const auto row = d.row(best);
        for (int j = 0; j < n; ++j) dnearest[j] = std::min(dnearest[j], row[j]);
    }

    // SWAP: apply the most improving single (medoid, candidate) exchange
    for (int iter = 0; iter < config.max_iter; ++iter) {
        const Assignment a = assign_to_medoids(d, medoids);
        double best_delta = 0.0;
        int best_m = -1;
        int best_c = -1;
        for (std::size_t m = 0; m < medoids.size(); ++m) {
            for (int c = 0; c < n; ++c) {
                if (is_medoid[c]) continue;
                double delta = 0.0;
                const auto row = d.row(c);
                for (int j = 0; j < n; ++j) {
                    if (a.nearest[j] == static_cast<int>(m)) {
                        delta += std::min(row[j], a.dsecond[j]) - a.dnearest[j];
                    } else if (row[j] < a.dnearest[j]) {
                        delta += row[j] - a.dnearest[j];
                    }
                }
                if (delta < best_delta) {
                    best_delta = delta;
                    best_m = static_cast<int>(m);
                    best_c = c;
                }
            }
        }
        if (best_m < 0) break;
        is_medoid[medoids[best_m]] = 0;
        is_medoid[best_c] = 1;
        medoids[best_m] = best_c;
    }

    return partition_from_medoids(d, medoids);
}

Partition hierarchical_clustering(const DistanceMatrix& d, int k, const BaselineConfig& config) {
    const int n = d.size();
    if (k < 1 || k > n) throw std::invalid_argument("hierarchical: k out of range");

    // working copy of pairwise cluster distances, indexed by cluster slot
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        const auto row = d.row(i);
        std::copy(row.begin(), row.end(), dist[i].begin());
    }
    std::vector<std::vector<int>> members(n);
    std::vector<char> active(n, 1);
    std::vector<int> label(n);  // smallest member index, for tie-breaking
    for (int i = 0; i < n; ++i) {
        members[i] = {i};
        label[i] = i;
    }

    int clusters = n;
    while (clusters > k) {
        int best_a = -1;
        int best_b = -1;
        double best_dist = kInf;
        for (int a = 0; a < n; ++a) {
            if (!active[a]) continue;
            for (int b = a + 1; b < n; ++b) {
                if (!active[b]) continue;
                const double dd = dist[a][b];
                if (dd < best_dist) {
                    best_dist = dd;
                    best_a = a;
                    best_b = b;
                } else if (dd == best_dist && best_a >= 0) {
                    const auto lhs = std::minmax(label[a], label[b]);
                    const auto rhs = std::minmax(label[best_a], label[best_b]);
                    if (lhs < rhs) {
                        best_a = a;
                        best_b = b;
                    }
                }
            }
        }

        const double na = static_cast<double>(members[best_a].size());
        const double nb = static_cast<double>(members[best_b].size());
        for (int c = 0; c < n; ++c) {
            if (!active[c] || c == best_a || c == best_b) continue;
            double updated = 0.0;
            switch (config.linkage) {
                case Linkage::single:
                    updated = std::min(dist[best_a][c], dist[best_b][c]);
                    break;
                case Linkage::complete:
                    updated = std::max(dist[best_a][c], dist[best_b][c]);
                    break;
                case Linkage::average:
                    updated = (na * dist[best_a][c] + nb * dist[best_b][c]) / (na + nb);
                    break;
            }
            dist[best_a][c] = updated;
            dist[c][best_a] = updated;
        }
        members[best_a].insert(members[best_a].end(), members[best_b].begin(),
                               members[best_b].end());
        label[best_a] = std::min(label[best_a], label[best_b]);
        active[best_b] = 0;
        --clusters;
    }

    Partition p;
    p.total = n;
    std::vector<int> slots;
    for (int a = 0; a < n; ++a) {
        if (active[a]) slots.push_back(a);
    }
    std::stable_sort(slots.begin(), slots.end(), [&](int a, int b) {
        if (members[a].size() != members[b].size()) {
            return members[a].size() > members[b].size();
        }
        return label[a] < label[b];
    });

    const double core_threshold = DistanceSet(d).quantile(0.1);
    for (int slot : slots) {
        auto set = std::move(members[slot]);
        std::sort(set.begin(), set.end());
        int core = set.front();
        int best_count = -1;
        for (int i : set) {
            int count = 0;
            const auto row = d.row(i);
            for (int j : set) {
                if (row[j] < core_threshold) ++count;
            }
            if (count > best_count) {
                best_count = count;
                core = i;
            }
        }
        p.sets.push_back(std::move(set));
        p.cores.push_back(core);
    }
    return p;
}

double classical_average_silhouette(const Partition& partition, const DistanceMatrix& d) {
    const std::size_t b = partition.sets.size();
    const int n = partition.total;
    if (b < 2) return 0.0;
    double sum = 0.0;
    for (std::size_t c = 0; c < b; ++c) {
        const auto& members = partition.sets[c];
        if (members.size() == 1) continue;  // singleton silhouette is 0
        for (int y : members) {
            const auto row = d.row(y);
            double within = 0.0;
            for (int l : members) within += row[l];
            const double a = within / static_cast<double>(members.size() - 1);
            double separation = kInf;
            for (std::size_t other = 0; other < b; ++other) {
                if (other == c) continue;
                double total = 0.0;
                for (int l : partition.sets[other]) total += row[l];
                separation = std::min(
                    separation, total / static_cast<double>(partition.sets[other].size()));
            }
            const double denom = std::max(a, separation);
            if (denom > 0.0) sum += (separation - a) / denom;
        }
    }
    return sum / static_cast<double>(n);
}

KSelection select_k(const DistanceMatrix& d, const BaselineConfig& config) {
    const int n = d.size();
    if (config.k_min < 2 || config.k_max > n - 1 || config.k_min > config.k_max) {
        throw std::invalid_argument("select_k: k range must lie within [2, N-1]");
    }
    const int count = config.k_max - config.k_min + 1;
    std::vector<double> scores(count);
    std::vector<Partition> partitions(count);

    parallel_blocks(static_cast<std::size_t>(count), config.workers,
                    [&](std::size_t begin, std::size_t end) {
                        for (std::size_t i = begin; i < end; ++i) {
                            const int k = config.k_min + static_cast<int>(i);
                            partitions[i] = config.method == BaselineMethod::kmedoids
                                                ? k_medoids(d, k, config)
                                                : hierarchical_clustering(d, k, config);
                            scores[i] = classical_average_silhouette(partitions[i], d);
                        }
                    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) best = i;  // ties keep the smaller k
    }

    KSelection sel;
    sel.k = config.k_min + static_cast<int>(best);
    sel.partition = std::move(partitions[best]);
    for (int i = 0; i < count; ++i) sel.silhouettes.emplace_back(config.k_min + i, scores[i]);
    sel.degenerate = scores[best] == 0.0;
    return sel;
}

}  // namespace etdclust
