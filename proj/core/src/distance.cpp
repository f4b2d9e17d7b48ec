#include "etdclust/distance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "etdclust/parallel.hpp"

namespace etdclust {

DistanceMatrix::DistanceMatrix(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("distance matrix: size must be >= 1");
    data_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

double elastic_time_distance(const AlignedSample& a, const AlignedSample& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("elastic_time_distance: grid length mismatch");
    }
    if (a.dim != b.dim) {
        throw std::invalid_argument("elastic_time_distance: dimension mismatch");
    }
    const int t = a.size();
    const int p = a.dim;
    const double* va = a.values.data();
    const double* vb = b.values.data();
    double max_sq = 0.0;
    for (int k = 0; k < t; ++k) {
        double sq = 0.0;
        const std::size_t off = static_cast<std::size_t>(k) * p;
        for (int d = 0; d < p; ++d) {
            const double diff = va[off + d] - vb[off + d];
            sq += diff * diff;
        }
        if (sq > max_sq) max_sq = sq;
    }
    // sqrt commutes with max, so this equals the max of per-point norms
    return std::sqrt(max_sq);
}

DistanceMatrix compute_distance_matrix(const AlignedDataset& data, int workers) {
    const int n = data.size();
    if (n < 2) throw std::invalid_argument("distance matrix: need at least 2 samples");

    DistanceMatrix matrix(n);
    const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;

    parallel_blocks(pairs, workers, [&](std::size_t begin, std::size_t end) {
        // locate the row of linear pair index `begin`
        std::size_t row_start = 0;
        int i = 0;
        while (row_start + static_cast<std::size_t>(n - 1 - i) <= begin) {
            row_start += static_cast<std::size_t>(n - 1 - i);
            ++i;
        }
        int j = static_cast<int>(begin - row_start) + i + 1;
        for (std::size_t r = begin; r < end; ++r) {
            matrix.set(i, j, elastic_time_distance(data.samples[i], data.samples[j]));
            if (++j == n) {
                ++i;
                j = i + 1;
            }
        }
    });
    return matrix;
}

double interpolated_quantile(std::span<const double> sorted, double theta) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty set");
    if (!(theta > 0.0 && theta < 1.0)) {
        throw std::invalid_argument("quantile: theta must lie in (0,1)");
    }
    const std::size_t m = sorted.size();
    const double h = static_cast<double>(m - 1) * theta;
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= m || frac == 0.0) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

DistanceSet::DistanceSet(const DistanceMatrix& matrix) {
    const int n = matrix.size();
    values_.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) values_.push_back(matrix(i, j));
    }
    std::sort(values_.begin(), values_.end());
}

}  // namespace etdclust
