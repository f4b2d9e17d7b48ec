#include "etdclust/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "etdclust/errors.hpp"

namespace etdclust::io {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

/// Reads all lines, stripping one trailing \r (CRLF input) per line.
std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) throw NumericError("format_double: conversion failed");
    return std::string(buf, ptr);
}

double parse_double(std::string_view token, const std::string& context) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw DataError(context + ": invalid number '" + std::string(token) + "'");
    }
    return value;
}

std::vector<SparseSample> read_long_csv(const std::filesystem::path& path, bool normalize) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw DataError(path.string() + ":1: missing header");

    const auto header = split_csv_line(lines[0]);
    if (header.size() < 3 || header[0] != "curve_id" || header[1] != "t") {
        throw DataError(path.string() + ":1: header must be curve_id,t,v1,...,vp");
    }
    const int dim = static_cast<int>(header.size()) - 2;
    for (int d = 0; d < dim; ++d) {
        if (header[d + 2] != "v" + std::to_string(d + 1)) {
            throw DataError(path.string() + ":1: header must be curve_id,t,v1,...,vp");
        }
    }

    struct RawCurve {
        std::vector<double> times;
        std::vector<double> values;
    };
    std::vector<std::string> order;
    std::map<std::string, RawCurve> curves;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(li + 1);
        const auto fields = split_csv_line(lines[li]);
        if (static_cast<int>(fields.size()) != dim + 2) {
            throw DataError(where + ": expected " + std::to_string(dim + 2) + " fields, got " +
                            std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw DataError(where + ": empty curve_id");
        auto [it, inserted] = curves.try_emplace(fields[0]);
        if (inserted) order.push_back(fields[0]);
        it->second.times.push_back(parse_double(fields[1], where));
        for (int d = 0; d < dim; ++d) {
            it->second.values.push_back(parse_double(fields[d + 2], where));
        }
    }
    if (order.empty()) throw DataError(path.string() + ": no data rows");

    std::vector<SparseSample> samples;
    samples.reserve(order.size());
    for (const auto& id : order) {
        auto& raw = curves[id];
        const std::size_t t_n = raw.times.size();
        std::vector<std::size_t> idx(t_n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return raw.times[a] < raw.times[b]; });

        std::vector<double> times(t_n);
        std::vector<double> values(t_n * dim);
        for (std::size_t k = 0; k < t_n; ++k) {
            times[k] = raw.times[idx[k]];
            for (int d = 0; d < dim; ++d) {
                values[k * dim + d] = raw.values[idx[k] * dim + d];
            }
        }
        for (std::size_t k = 1; k < t_n; ++k) {
            if (times[k] == times[k - 1]) {
                throw DataError(path.string() + ": curve '" + id + "' has duplicate time " +
                                format_double(times[k]));
            }
        }
        if (normalize) {
            if (t_n < 2) {
                throw DataError(path.string() + ": curve '" + id +
                                "' has fewer than 2 times, cannot normalize");
            }
            normalize_times_in_place(times);
        }
        try {
            samples.emplace_back(id, std::move(times), std::move(values), dim);
        } catch (const std::invalid_argument& e) {
            throw DataError(path.string() + ": " + e.what());
        }
    }
    return samples;
}

void write_long_csv(const std::filesystem::path& path,
                    std::span<const SparseSample> samples) {
    auto out = open_for_write(path);
    const int dim = samples.empty() ? 0 : samples.front().dim();
    out << "curve_id,t";
    for (int d = 1; d <= dim; ++d) out << ",v" << d;
    out << "\n";
    for (const auto& s : samples) {
        for (int k = 0; k < s.size(); ++k) {
            out << s.id() << ',' << format_double(s.times()[k]);
            for (double v : s.value(k)) out << ',' << format_double(v);
            out << "\n";
        }
    }
}

std::vector<std::pair<std::string, int>> read_truth_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty() || split_csv_line(lines[0]) != std::vector<std::string>{"curve_id", "label"}) {
        throw DataError(path.string() + ":1: header must be curve_id,label");
    }
    std::vector<std::pair<std::string, int>> out;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(li + 1);
        const auto fields = split_csv_line(lines[li]);
        if (fields.size() != 2) throw DataError(where + ": expected curve_id,label");
        int label = 0;
        if (fields[1] == "OUTLIER") {
            label = -1;
        } else {
            const auto [ptr, ec] = std::from_chars(
                fields[1].data(), fields[1].data() + fields[1].size(), label);
            if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size()) {
                throw DataError(where + ": label must be an integer or OUTLIER");
            }
        }
        out.emplace_back(fields[0], label);
    }
    if (out.empty()) throw DataError(path.string() + ": no data rows");
    return out;
}

void write_truth_csv(const std::filesystem::path& path, std::span<const std::string> ids,
                     std::span<const int> labels) {
    if (ids.size() != labels.size()) {
        throw std::invalid_argument("write_truth_csv: ids/labels size mismatch");
    }
    auto out = open_for_write(path);
    out << "curve_id,label\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        out << ids[i] << ',';
        if (labels[i] == -1) {
            out << "OUTLIER";
        } else {
            out << labels[i];
        }
        out << "\n";
    }
}

void write_distance_csv(const std::filesystem::path& path, const DistanceMatrix& matrix,
                        std::span<const std::string> ids) {
    if (static_cast<int>(ids.size()) != matrix.size()) {
        throw std::invalid_argument("write_distance_csv: id count does not match matrix size");
    }
    auto out = open_for_write(path);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out << ',';
        out << ids[i];
    }
    out << "\n";
    const int n = matrix.size();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) out << ',';
            out << format_double(matrix(i, j));
        }
        out << "\n";
    }
}

std::pair<DistanceMatrix, std::vector<std::string>> read_distance_csv(
    const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw DataError(path.string() + ":1: missing id header");
    std::vector<std::string> ids = split_csv_line(lines[0]);
    const int n = static_cast<int>(ids.size());
    if (n < 1 || ids[0].empty()) throw DataError(path.string() + ":1: missing id header");

    std::vector<double> raw(static_cast<std::size_t>(n) * n);
    int row = 0;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty()) continue;
        const std::string where = path.string() + ":" + std::to_string(li + 1);
        if (row >= n) throw DataError(where + ": more rows than header ids");
        const auto fields = split_csv_line(lines[li]);
        if (static_cast<int>(fields.size()) != n) {
            throw DataError(where + ": expected " + std::to_string(n) + " values");
        }
        for (int j = 0; j < n; ++j) {
            const double v = parse_double(fields[j], where);
            if (v < 0.0) throw DataError(where + ": negative distance");
            raw[static_cast<std::size_t>(row) * n + j] = v;
        }
        ++row;
    }
    if (row != n) {
        throw DataError(path.string() + ": expected " + std::to_string(n) + " rows, got " +
                        std::to_string(row));
    }

    DistanceMatrix matrix(n);
    for (int i = 0; i < n; ++i) {
        if (raw[static_cast<std::size_t>(i) * n + i] != 0.0) {
            throw DataError(path.string() + ": nonzero diagonal at row " + std::to_string(i + 1));
        }
        for (int j = i + 1; j < n; ++j) {
            const double upper = raw[static_cast<std::size_t>(i) * n + j];
            const double lower = raw[static_cast<std::size_t>(j) * n + i];
            if (upper != lower) {
                throw DataError(path.string() + ": matrix not symmetric at (" +
                                std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
            }
            matrix.set(i, j, upper);
        }
    }
    return {std::move(matrix), std::move(ids)};
}

}  // namespace etdclust::io
