#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "etdclust/distance.hpp"
#include "etdclust/rtlp.hpp"

namespace etdclust {

enum class BaselineMethod { kmedoids, hierarchical };
enum class Linkage { average, single, complete };

struct BaselineConfig {
    BaselineMethod method = BaselineMethod::kmedoids;
    int k_min = 2;
    int k_max = 8;
    Linkage linkage = Linkage::average;  // hierarchical only
    int max_iter = 100;                  // kmedoids swap iterations
    std::uint64_t seed = 0;              // reserved; PAM BUILD+SWAP is deterministic
    int workers = 1;
};

/// PAM: greedy BUILD seeding followed by best-single-swap descent until no
/// swap lowers the total distance-to-medoid or max_iter is reached. Clusters
/// are ordered by non-increasing size with medoids as cores. k in [1, N].
Partition k_medoids(const DistanceMatrix& distances, int k, const BaselineConfig& config = {});

/// Agglomerative clustering with Lance-Williams updates, merging until k
/// clusters remain. Equal-distance merges resolve to the lexicographically
/// smallest pair of cluster labels (a cluster is labelled by its smallest
/// member). Cores are the members with the most within-cluster neighbours
/// under the 0.1-quantile of the off-diagonal distance set. k in [1, N].
Partition hierarchical_clustering(const DistanceMatrix& distances, int k,
                                  const BaselineConfig& config = {});

/// Classical average silhouette over a full partition (no outlier class);
/// members of singleton clusters contribute 0.
double classical_average_silhouette(const Partition& partition, const DistanceMatrix& distances);

struct KSelection {
    int k = 0;
    Partition partition;
    /// (k, average silhouette) for every candidate k.
    std::vector<std::pair<int, double>> silhouettes;
    /// Set when silhouettes are degenerate (all zero, e.g. constant data);
    /// the smallest k is returned in that case.
    bool degenerate = false;
};

/// Runs the configured method for each k in [k_min, k_max] and returns the k
/// with the largest average silhouette; ties go to the smallest k.
/// Requires 2 <= k_min <= k_max <= N-1.
KSelection select_k(const DistanceMatrix& distances, const BaselineConfig& config);

}  // namespace etdclust
