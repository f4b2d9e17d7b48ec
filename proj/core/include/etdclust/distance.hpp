#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "etdclust/sample.hpp"

namespace etdclust {

/// Symmetric N x N distance matrix with zero diagonal, stored in full for
/// O(1) row access.
class DistanceMatrix {
public:
    explicit DistanceMatrix(int n);

    int size() const { return n_; }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * n_ + j];
    }
    /// Writes both (i,j) and (j,i).
    void set(int i, int j, double d) {
        data_[static_cast<std::size_t>(i) * n_ + j] = d;
        data_[static_cast<std::size_t>(j) * n_ + i] = d;
    }
    std::span<const double> row(int i) const {
        return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
    }

private:
    int n_;
    std::vector<double> data_;
};

/// Elastic time distance between two samples aligned on the same grid:
/// the maximum over grid points of the Euclidean distance between the
/// p-dimensional values. Throws std::invalid_argument on a grid-length or
/// dimension mismatch.
double elastic_time_distance(const AlignedSample& a, const AlignedSample& b);

/// All pairwise distances. Pairs are partitioned into contiguous blocks
/// over `workers` threads; the result is identical for any worker count.
/// Requires at least 2 samples.
DistanceMatrix compute_distance_matrix(const AlignedDataset& data, int workers = 1);

/// Linear-interpolation quantile on order statistics: with m sorted entries
/// x_0..x_{m-1} and position h = (m-1)*theta, returns
/// x_{floor(h)} + (h - floor(h)) * (x_{floor(h)+1} - x_{floor(h)}).
/// theta must lie in (0,1) and the span must be non-empty and sorted.
double interpolated_quantile(std::span<const double> sorted, double theta);

/// The sorted n(n-1)/2 off-diagonal upper-triangle entries of a distance
/// matrix, used for quantile thresholds. Diagonal zeros are excluded so
/// they cannot distort low quantiles.
class DistanceSet {
public:
    explicit DistanceSet(const DistanceMatrix& matrix);

    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double quantile(double theta) const { return interpolated_quantile(values_, theta); }

private:
    std::vector<double> values_;
};

}  // namespace etdclust
