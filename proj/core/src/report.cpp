#include "etdclust/report.hpp"

#include <fstream>
#include <sstream>

#include "etdclust/csv.hpp"
#include "etdclust/errors.hpp"

namespace etdclust::io {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ' ';
        out += item;
    }
    return out;
}

std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream in(line);
    std::string word;
    while (in >> word) words.push_back(word);
    return words;
}

}  // namespace

std::string RunReport::to_text() const {
    std::ostringstream out;
    out << "# etdclust run report\n";
    out << "format = 1\n";
    out << "method = " << method << "\n";
    out << "n_samples = " << n_samples << "\n";
    if (theta_star) out << "theta_star = " << format_double(*theta_star) << "\n";
    if (k_star) out << "k_star = " << *k_star << "\n";
    out << "n_clusters = " << clusters.size() << "\n";
    out << "n_outliers = " << outliers.size() << "\n";

    for (std::size_t c = 0; c < clusters.size(); ++c) {
        out << "\n[cluster " << (c + 1) << "]\n";
        out << "size = " << clusters[c].size << "\n";
        out << "center = " << clusters[c].center << "\n";
        out << "members = " << join(clusters[c].members) << "\n";
    }

    out << "\n[outliers]\n";
    out << "members = " << join(outliers) << "\n";

    out << "\n[silhouette]\n";
    for (const auto& [x, s] : silhouette_trace) {
        out << format_double(x) << " = " << format_double(s) << "\n";
    }

    if (metrics) {
        out << "\n[metrics]\n";
        out << "ari = " << format_double(metrics->ari) << "\n";
        out << "ari_squared = " << format_double(metrics->ari_squared) << "\n";
        if (metrics->p_c) out << "p_c = " << format_double(*metrics->p_c) << "\n";
        if (metrics->degenerate_ari) out << "ari_degenerate = 1\n";
        out << "p_f = " << format_double(metrics->p_f) << "\n";
        out << "n_true_outliers = " << metrics->n_true_outliers << "\n";
        out << "n_detected = " << metrics->n_detected << "\n";
        out << "n_correct = " << metrics->n_correct << "\n";
        out << "n_false = " << metrics->n_false << "\n";
    }
    return out.str();
}

RunReport RunReport::from_text(const std::string& text) {
    RunReport report;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int cluster_index = -1;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw DataError("report: malformed section at line " +
                                                    std::to_string(line_no));
            section = line.substr(1, line.size() - 2);
            if (section.rfind("cluster ", 0) == 0) {
                cluster_index = std::stoi(section.substr(8)) - 1;
                if (cluster_index != static_cast<int>(report.clusters.size())) {
                    throw DataError("report: clusters out of order at line " +
                                    std::to_string(line_no));
                }
                report.clusters.emplace_back();
            }
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw DataError("report: expected key = value at line " + std::to_string(line_no));
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!value.empty() && value.front() == ' ') value.erase(value.begin());

        if (section.empty()) {
            if (key == "format") continue;
            if (key == "method") report.method = value;
            else if (key == "n_samples") report.n_samples = std::stoi(value);
            else if (key == "theta_star") report.theta_star = parse_double(value, "report");
            else if (key == "k_star") report.k_star = std::stoi(value);
            else if (key == "n_clusters" || key == "n_outliers") continue;  // derived
            else throw DataError("report: unknown key '" + key + "'");
        } else if (section.rfind("cluster ", 0) == 0) {
            auto& cluster = report.clusters[cluster_index];
            if (key == "size") cluster.size = std::stoi(value);
            else if (key == "center") cluster.center = value;
            else if (key == "members") cluster.members = split_words(value);
            else throw DataError("report: unknown cluster key '" + key + "'");
        } else if (section == "outliers") {
            if (key == "members") report.outliers = split_words(value);
            else throw DataError("report: unknown outliers key '" + key + "'");
        } else if (section == "silhouette") {
            report.silhouette_trace.emplace_back(parse_double(key, "report"),
                                                 parse_double(value, "report"));
        } else if (section == "metrics") {
            if (!report.metrics) report.metrics = EvalReport{};
            if (key == "ari") report.metrics->ari = parse_double(value, "report");
            else if (key == "ari_squared") report.metrics->ari_squared = parse_double(value, "report");
            else if (key == "p_c") report.metrics->p_c = parse_double(value, "report");
            else if (key == "p_f") report.metrics->p_f = parse_double(value, "report");
            else if (key == "ari_degenerate") report.metrics->degenerate_ari = value == "1";
            else if (key == "n_true_outliers") report.metrics->n_true_outliers = std::stoi(value);
            else if (key == "n_detected") report.metrics->n_detected = std::stoi(value);
            else if (key == "n_correct") report.metrics->n_correct = std::stoi(value);
            else if (key == "n_false") report.metrics->n_false = std::stoi(value);
            else throw DataError("report: unknown metrics key '" + key + "'");
        } else {
            throw DataError("report: unknown section '" + section + "'");
        }
    }
    return report;
}

void RunReport::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << to_text();
}

RunReport RunReport::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_text(buffer.str());
}

void RunReport::save_silhouette_csv(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out << (method == "rtlp" ? "theta" : "k") << ",silhouette\n";
    for (const auto& [x, s] : silhouette_trace) {
        out << format_double(x) << ',' << format_double(s) << "\n";
    }
}

}  // namespace etdclust::io
