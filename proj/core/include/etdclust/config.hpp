#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etdclust/baselines.hpp"
#include "etdclust/rtlp.hpp"
#include "etdclust/simulate.hpp"

namespace etdclust::io {

/// `key = value` file with '#' comments. Parsing errors carry line numbers;
/// every key must be consumed by the caller (unknown keys are rejected).
class KeyValueFile {
public:
    static KeyValueFile parse(const std::filesystem::path& path);

    std::optional<std::string> take(const std::string& key);
    std::optional<double> take_double(const std::string& key);
    std::optional<int> take_int(const std::string& key);
    std::optional<std::uint64_t> take_u64(const std::string& key);
    std::optional<std::vector<double>> take_double_list(const std::string& key);
    std::optional<std::vector<std::string>> take_list(const std::string& key);

    /// Throws DataError if any keys were not consumed.
    void finish() const;

private:
    std::string source_;
    std::map<std::string, std::string> values_;
};

sim::Scenario parse_scenario(const std::string& name);
sim::Contamination parse_contamination(const std::string& name);
Linkage parse_linkage(const std::string& name);
std::string to_string(sim::Scenario id);
std::string to_string(sim::Contamination id);

/// Simulation config file: scenario, contamination, sparsity and seed.
struct SimConfig {
    sim::ScenarioSpec scenario;
    sim::ContaminationSpec contamination;
    sim::SparsitySpec sparsity;

    static SimConfig from_file(const std::filesystem::path& path);
};

/// Method parameters for the cluster command (rtlp + baseline sections in
/// one file; unrelated keys for the chosen method are simply unused).
struct MethodConfig {
    RtlpConfig rtlp;
    BaselineConfig baseline;
    std::optional<int> fixed_k;  // run baselines at this k instead of selecting

    static MethodConfig defaults();
    static MethodConfig from_file(const std::filesystem::path& path);
};

}  // namespace etdclust::io
