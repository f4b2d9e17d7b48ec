#pragma once

#include <span>
#include <string>
#include <vector>

namespace etdclust {

/// One subject's multivariate curve: a strictly increasing time grid in [0,1]
/// and one value vector of dimension `dim` per observed time. Values are
/// stored flat, row-major: value d of observation k is values()[k*dim + d].
class SparseSample {
public:
    SparseSample(std::string id, std::vector<double> times,
                 std::vector<double> values, int dim);

    const std::string& id() const { return id_; }
    int dim() const { return dim_; }
    /// Number of observed times (T_n).
    int size() const { return static_cast<int>(times_.size()); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }
    std::span<const double> value(int k) const {
        return {values_.data() + static_cast<std::size_t>(k) * dim_,
                static_cast<std::size_t>(dim_)};
    }

private:
    std::string id_;
    std::vector<double> times_;
    std::vector<double> values_;
    int dim_;
};

/// Equidistant grid st_k = k/(T-1) for k = 0..T-1, with T the maximum
/// number of observations over the dataset.
class StandardGrid {
public:
    explicit StandardGrid(int size);

    int size() const { return static_cast<int>(points_.size()); }
    double operator[](int k) const { return points_[k]; }
    std::span<const double> points() const { return points_; }

private:
    std::vector<double> points_;
};

/// A curve resampled onto the standard grid by nearest-observed-time lookup.
/// source_index[k] is the (0-based) index into the original sample's times
/// that realizes the nearest time; it is non-decreasing in k.
struct AlignedSample {
    std::string id;
    std::vector<double> values;  // grid_size * dim, row-major
    std::vector<int> source_index;
    int dim = 0;

    int size() const { return static_cast<int>(source_index.size()); }
    std::span<const double> value(int k) const {
        return {values.data() + static_cast<std::size_t>(k) * dim,
                static_cast<std::size_t>(dim)};
    }
};

/// All samples of a dataset aligned onto one shared grid.
struct AlignedDataset {
    StandardGrid grid;
    std::vector<AlignedSample> samples;
    int dim = 0;

    int size() const { return static_cast<int>(samples.size()); }
};

/// Grid with T = max_n T_n points. Throws std::invalid_argument on an empty
/// dataset or when every sample is a singleton (degenerate grid).
StandardGrid build_standard_grid(std::span<const SparseSample> samples);

/// Nearest-observed-time alignment; ties between two equidistant observed
/// times resolve to the earlier one.
AlignedSample align(const SparseSample& sample, const StandardGrid& grid);

/// Convenience: build the standard grid and align every sample. Requires a
/// consistent value dimension across samples.
AlignedDataset align_all(std::span<const SparseSample> samples);

/// Affinely maps times so min -> 0 and max -> 1. Requires at least two
/// distinct times.
SparseSample normalize_time(const SparseSample& sample);

/// Same map on a raw time vector, for use before SparseSample construction
/// (which enforces times within [0,1]).
void normalize_times_in_place(std::vector<double>& times);

}  // namespace etdclust
