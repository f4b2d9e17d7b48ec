#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "etdclust/distance.hpp"
#include "etdclust/sample.hpp"

namespace etdclust::io {

/// Shortest round-trip decimal representation ("." separator, locale-free).
std::string format_double(double value);

/// Locale-free double parser; the whole token must be consumed.
/// Throws DataError mentioning `context` otherwise.
double parse_double(std::string_view token, const std::string& context);

/// Long-format curve data: header "curve_id,t,v1,...,vp", one row per
/// observed time. Rows of one curve need not be contiguous but must have
/// distinct t. Curves are returned in order of first appearance.
/// With normalize set, each curve's times are affinely mapped onto [0,1]
/// before validation.
std::vector<SparseSample> read_long_csv(const std::filesystem::path& path,
                                        bool normalize = false);
void write_long_csv(const std::filesystem::path& path,
                    std::span<const SparseSample> samples);

/// Truth file: header "curve_id,label"; label is a cluster number or the
/// literal OUTLIER (mapped to -1).
std::vector<std::pair<std::string, int>> read_truth_csv(const std::filesystem::path& path);
void write_truth_csv(const std::filesystem::path& path,
                     std::span<const std::string> ids, std::span<const int> labels);

/// Distance matrix: first line is the comma-joined curve ids, then N rows of
/// N comma-separated values. Reading validates symmetry, zero diagonal and
/// non-negativity.
void write_distance_csv(const std::filesystem::path& path, const DistanceMatrix& matrix,
                        std::span<const std::string> ids);
std::pair<DistanceMatrix, std::vector<std::string>> read_distance_csv(
    const std::filesystem::path& path);

}  // namespace etdclust::io
