#include "etdclust/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "etdclust/csv.hpp"
#include "etdclust/errors.hpp"

namespace etdclust::io {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        if (comma == std::string::npos) {
            const std::string item = trim(std::string_view(value).substr(start));
            if (!item.empty()) items.push_back(item);
            break;
        }
        const std::string item = trim(std::string_view(value).substr(start, comma - start));
        if (!item.empty()) items.push_back(item);
        start = comma + 1;
    }
    return items;
}

}  // namespace

KeyValueFile KeyValueFile::parse(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    KeyValueFile file;
    file.source_ = path.string();
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const std::size_t eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(file.source_ + ":" + std::to_string(line_no) +
                            ": expected key = value");
        }
        const std::string key = trim(std::string_view(trimmed).substr(0, eq));
        const std::string value = trim(std::string_view(trimmed).substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(file.source_ + ":" + std::to_string(line_no) + ": empty key");
        }
        if (!file.values_.emplace(key, value).second) {
            throw ConfigError(file.source_ + ":" + std::to_string(line_no) + ": duplicate key '" +
                            key + "'");
        }
    }
    return file;
}

std::optional<std::string> KeyValueFile::take(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    std::string value = it->second;
    values_.erase(it);
    return value;
}

std::optional<double> KeyValueFile::take_double(const std::string& key) {
    auto raw = take(key);
    if (!raw) return std::nullopt;
    try {
        return parse_double(*raw, source_ + ": key '" + key + "'");
    } catch (const DataError& e) {
        throw ConfigError(e.what());
    }
}

std::optional<int> KeyValueFile::take_int(const std::string& key) {
    auto raw = take(key);
    if (!raw) return std::nullopt;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
    if (ec != std::errc{} || ptr != raw->data() + raw->size()) {
        throw ConfigError(source_ + ": key '" + key + "': invalid integer '" + *raw + "'");
    }
    return value;
}

std::optional<std::uint64_t> KeyValueFile::take_u64(const std::string& key) {
    auto raw = take(key);
    if (!raw) return std::nullopt;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(raw->data(), raw->data() + raw->size(), value);
    if (ec != std::errc{} || ptr != raw->data() + raw->size()) {
        throw ConfigError(source_ + ": key '" + key + "': invalid unsigned integer '" + *raw + "'");
    }
    return value;
}

std::optional<std::vector<double>> KeyValueFile::take_double_list(const std::string& key) {
    auto raw = take(key);
    if (!raw) return std::nullopt;
    std::vector<double> values;
    for (const auto& item : split_list(*raw)) {
        try {
            values.push_back(parse_double(item, source_ + ": key '" + key + "'"));
        } catch (const DataError& e) {
            throw ConfigError(e.what());
        }
    }
    return values;
}

std::optional<std::vector<std::string>> KeyValueFile::take_list(const std::string& key) {
    auto raw = take(key);
    if (!raw) return std::nullopt;
    return split_list(*raw);
}

void KeyValueFile::finish() const {
    if (values_.empty()) return;
    std::string keys;
    for (const auto& [k, v] : values_) {
        if (!keys.empty()) keys += ", ";
        keys += k;
    }
    throw ConfigError(source_ + ": unknown keys: " + keys);
}

sim::Scenario parse_scenario(const std::string& name) {
    if (name == "S1") return sim::Scenario::S1;
    if (name == "S2") return sim::Scenario::S2;
    if (name == "S3") return sim::Scenario::S3;
    if (name == "S4") return sim::Scenario::S4;
    if (name == "S5") return sim::Scenario::S5;
    if (name == "S6") return sim::Scenario::S6;
    throw ConfigError("unknown scenario '" + name + "' (expected S1..S6)");
}

sim::Contamination parse_contamination(const std::string& name) {
    if (name == "none") return sim::Contamination::none;
    if (name == "C1") return sim::Contamination::C1;
    if (name == "C2") return sim::Contamination::C2;
    if (name == "C3") return sim::Contamination::C3;
    if (name == "C4") return sim::Contamination::C4;
    if (name == "C5") return sim::Contamination::C5;
    if (name == "C6") return sim::Contamination::C6;
    throw ConfigError("unknown contamination '" + name + "' (expected none or C1..C6)");
}

Linkage parse_linkage(const std::string& name) {
    if (name == "average") return Linkage::average;
    if (name == "single") return Linkage::single;
    if (name == "complete") return Linkage::complete;
    throw ConfigError("unknown linkage '" + name + "' (expected average, single or complete)");
}

std::string to_string(sim::Scenario id) {
    switch (id) {
        case sim::Scenario::S1: return "S1";
        case sim::Scenario::S2: return "S2";
        case sim::Scenario::S3: return "S3";
        case sim::Scenario::S4: return "S4";
        case sim::Scenario::S5: return "S5";
        case sim::Scenario::S6: return "S6";
    }
    return "?";
}

std::string to_string(sim::Contamination id) {
    switch (id) {
        case sim::Contamination::none: return "none";
        case sim::Contamination::C1: return "C1";
        case sim::Contamination::C2: return "C2";
        case sim::Contamination::C3: return "C3";
        case sim::Contamination::C4: return "C4";
        case sim::Contamination::C5: return "C5";
        case sim::Contamination::C6: return "C6";
    }
    return "?";
}

SimConfig SimConfig::from_file(const std::filesystem::path& path) {
    KeyValueFile file = KeyValueFile::parse(path);
    SimConfig config;
    if (auto v = file.take("scenario")) config.scenario.id = parse_scenario(*v);
    if (auto v = file.take_int("n_clusters")) config.scenario.n_clusters = *v;
    if (auto v = file.take_int("n_samples")) config.scenario.n_samples = *v;
    if (auto v = file.take_int("grid_size")) config.scenario.grid_size = *v;
    if (auto v = file.take_int("dim")) config.scenario.dim = *v;
    if (auto v = file.take_double_list("sigma2")) config.scenario.sigma2 = *v;
    if (auto v = file.take_double("eta")) config.scenario.eta = *v;
    if (auto v = file.take_u64("seed")) config.scenario.seed = *v;
    if (auto v = file.take("contamination")) config.contamination.id = parse_contamination(*v);
    if (auto v = file.take_double("outlier_rate")) config.contamination.rate = *v;
    if (auto v = file.take_double("p_size")) config.sparsity.p_size = *v;
    if (auto v = file.take_double("p_curve")) config.sparsity.p_curve = *v;
    file.finish();
    try {
        config.scenario.validate();
        config.contamination.validate();
        config.sparsity.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config;
}

MethodConfig MethodConfig::defaults() { return MethodConfig{}; }

MethodConfig MethodConfig::from_file(const std::filesystem::path& path) {
    KeyValueFile file = KeyValueFile::parse(path);
    MethodConfig config;
    const auto theta_min = file.take_double("theta_min");
    const auto theta_max = file.take_double("theta_max");
    const auto theta_step = file.take_double("theta_step");
    if (theta_min || theta_max || theta_step) {
        const double lo = theta_min.value_or(0.01);
        const double hi = theta_max.value_or(0.30);
        const double step = theta_step.value_or(0.01);
        if (step <= 0.0) throw ConfigError(path.string() + ": theta_step must be positive");
        std::vector<double> grid;
        for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
        config.rtlp.theta_grid = std::move(grid);
    }
    if (auto v = file.take_double("p_min")) config.rtlp.p_min = *v;
    if (auto v = file.take_double("alpha")) config.rtlp.alpha = *v;
    if (auto v = file.take_int("k_min")) config.baseline.k_min = *v;
    if (auto v = file.take_int("k_max")) config.baseline.k_max = *v;
    if (auto v = file.take("linkage")) config.baseline.linkage = parse_linkage(*v);
    if (auto v = file.take_int("max_iter")) config.baseline.max_iter = *v;
    if (auto v = file.take_int("k")) config.fixed_k = *v;
    file.finish();
    try {
        config.rtlp.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config;
}

}  // namespace etdclust::io
