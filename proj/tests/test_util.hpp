#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "etdclust/distance.hpp"
#include "etdclust/rng.hpp"
#include "etdclust/sample.hpp"

namespace testutil {

using etdclust::AlignedDataset;
using etdclust::AlignedSample;
using etdclust::CounterRng;
using etdclust::DistanceMatrix;
using etdclust::SparseSample;

inline SparseSample random_sparse_sample(CounterRng& rng, const std::string& id, int dim,
                                         int min_points, int max_points) {
    const int t_n = min_points +
                    static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(max_points - min_points + 1)));
    std::vector<double> times;
    times.reserve(t_n);
    while (static_cast<int>(times.size()) < t_n) {
        const double t = rng.next_double();
        if (std::find(times.begin(), times.end(), t) == times.end()) times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    std::vector<double> values(static_cast<std::size_t>(t_n) * dim);
    for (double& v : values) v = rng.next_uniform(-5.0, 5.0);
    return SparseSample(id, std::move(times), std::move(values), dim);
}

inline std::vector<SparseSample> random_sparse_dataset(CounterRng& rng, int n, int dim,
                                                       int min_points, int max_points) {
    std::vector<SparseSample> samples;
    samples.reserve(n);
    for (int i = 0; i < n; ++i) {
        samples.push_back(
            random_sparse_sample(rng, "s" + std::to_string(i), dim, min_points, max_points));
    }
    return samples;
}

/// Independent ETD oracle: per grid point take sqrt of the squared Euclidean
/// distance, then take the max over grid points.
inline double naive_etd(const AlignedSample& a, const AlignedSample& b) {
    double best = 0.0;
    for (int k = 0; k < a.size(); ++k) {
        double sq = 0.0;
        for (int d = 0; d < a.dim; ++d) {
            const double diff = a.value(k)[d] - b.value(k)[d];
            sq += diff * diff;
        }
        best = std::max(best, std::sqrt(sq));
    }
    return best;
}

/// Naive double-loop distance matrix oracle.
inline DistanceMatrix naive_distance_matrix(const AlignedDataset& data) {
    DistanceMatrix matrix(data.size());
    for (int i = 0; i < data.size(); ++i) {
        for (int j = i + 1; j < data.size(); ++j) {
            matrix.set(i, j, naive_etd(data.samples[i], data.samples[j]));
        }
    }
    return matrix;
}

/// Symmetric matrix from an upper-triangle initializer, for hand-built
/// clustering traces.
inline DistanceMatrix matrix_from_upper(int n,
                                        const std::vector<std::vector<double>>& upper) {
    DistanceMatrix matrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            matrix.set(i, j, upper[i][j - i - 1]);
        }
    }
    return matrix;
}

}  // namespace testutil
