#include "etdclust/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace etdclust {

SparseSample::SparseSample(std::string id, std::vector<double> times,
                           std::vector<double> values, int dim)
    : id_(std::move(id)), times_(std::move(times)), values_(std::move(values)), dim_(dim) {
    if (dim_ < 1) throw std::invalid_argument("sample '" + id_ + "': dimension must be >= 1");
    if (times_.empty()) throw std::invalid_argument("sample '" + id_ + "': no observations");
    if (values_.size() != times_.size() * static_cast<std::size_t>(dim_)) {
        throw std::invalid_argument("sample '" + id_ + "': values size does not match times * dim");
    }
    for (std::size_t k = 0; k < times_.size(); ++k) {
        if (!std::isfinite(times_[k]) || times_[k] < 0.0 || times_[k] > 1.0) {
            throw std::invalid_argument("sample '" + id_ +
                                        "': times must lie in [0,1]; normalize first");
        }
        if (k > 0 && times_[k] <= times_[k - 1]) {
            throw std::invalid_argument("sample '" + id_ + "': times must be strictly increasing");
        }
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("sample '" + id_ + "': non-finite value");
        }
    }
}

StandardGrid::StandardGrid(int size) {
    if (size < 2) throw std::invalid_argument("degenerate grid: need at least 2 points");
    points_.resize(size);
    for (int k = 0; k < size; ++k) {
        points_[k] = static_cast<double>(k) / static_cast<double>(size - 1);
    }
}

StandardGrid build_standard_grid(std::span<const SparseSample> samples) {
    if (samples.empty()) throw std::invalid_argument("empty dataset");
    int max_t = 0;
    for (const auto& s : samples) max_t = std::max(max_t, s.size());
    if (max_t < 2) throw std::invalid_argument("degenerate grid: all samples are singletons");
    return StandardGrid(max_t);
}

AlignedSample align(const SparseSample& sample, const StandardGrid& grid) {
    const int t = grid.size();
    const int p = sample.dim();
    AlignedSample out;
    out.id = sample.id();
    out.dim = p;
    out.source_index.resize(t);
    out.values.resize(static_cast<std::size_t>(t) * p);

    const auto& times = sample.times();
    int j = 0;
    for (int k = 0; k < t; ++k) {
        const double st = grid[k];
        // advance only on strict improvement, so ties keep the earlier time
        while (j + 1 < sample.size() &&
               std::abs(times[j + 1] - st) < std::abs(times[j] - st)) {
            ++j;
        }
        out.source_index[k] = j;
        const auto v = sample.value(j);
        std::copy(v.begin(), v.end(), out.values.begin() + static_cast<std::size_t>(k) * p);
    }
    return out;
}

AlignedDataset align_all(std::span<const SparseSample> samples) {
    StandardGrid grid = build_standard_grid(samples);
    const int p = samples.front().dim();
    AlignedDataset data{std::move(grid), {}, p};
    data.samples.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.dim() != p) {
            throw std::invalid_argument("sample '" + s.id() +
                                        "': inconsistent value dimension within dataset");
        }
        data.samples.push_back(align(s, data.grid));
    }
    return data;
}

void normalize_times_in_place(std::vector<double>& times) {
    if (times.size() < 2) throw std::invalid_argument("normalize_time: need at least 2 times");
    const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
    const double span = *hi - *lo;
    if (span <= 0.0) throw std::invalid_argument("normalize_time: all times identical");
    const double min = *lo;
    for (double& t : times) t = (t - min) / span;
}

SparseSample normalize_time(const SparseSample& sample) {
    std::vector<double> times = sample.times();
    normalize_times_in_place(times);
    return SparseSample(sample.id(), std::move(times), sample.values(), sample.dim());
}

}  // namespace etdclust
