#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "etdclust/csv.hpp"
#include "etdclust/report.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return ETDCLUST_CLI_PATH; }

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "etdclust_cli_tests";
    fs::create_directories(dir);
    return dir;
}

int run_cli(const std::string& args) {
    const std::string command =
        std::string(cli_path()) + " " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes the dataset and truth files") {
    const fs::path dir = work_dir();
    const fs::path config = dir / "sim.cfg";
    write_file(config,
               "scenario = S4\nn_samples = 30\nn_clusters = 3\ngrid_size = 12\ndim = 3\n"
               "contamination = C1\noutlier_rate = 0.1\nseed = 5\n");
    const fs::path data = dir / "data.csv";
    REQUIRE(run_cli("simulate " + quoted(config) + " --out " + quoted(data)) == 0);
    const auto samples = etdclust::io::read_long_csv(data);
    CHECK(samples.size() == 30);
    const auto truth = etdclust::io::read_truth_csv(dir / "data_truth.csv");
    int outliers = 0;
    for (const auto& [id, label] : truth) outliers += label == -1 ? 1 : 0;
    CHECK(outliers == 3);  // ceil(30 * 0.1)
}

TEST_CASE("simulate is byte-deterministic for a fixed seed") {
    const fs::path dir = work_dir();
    const fs::path config = dir / "sim_det.cfg";
    write_file(config,
               "scenario = S1\nn_samples = 12\nn_clusters = 3\ngrid_size = 10\ndim = 2\n"
               "p_size = 0.5\np_curve = 0.3\n");
    const fs::path a = dir / "det_a.csv";
    const fs::path b = dir / "det_b.csv";
    REQUIRE(run_cli("simulate " + quoted(config) + " --seed 77 --out " + quoted(a)) == 0);
    REQUIRE(run_cli("simulate " + quoted(config) + " --seed 77 --out " + quoted(b)) == 0);
    CHECK(read_file(a) == read_file(b));
    CHECK(read_file(dir / "det_a_truth.csv") == read_file(dir / "det_b_truth.csv"));
}

TEST_CASE("distance output matches the library and ignores worker count") {
    const fs::path dir = work_dir();
    const fs::path data = dir / "dist_data.csv";
    write_file(data,
               "curve_id,t,v1\n"
               "a,0,0\na,1,0\n"
               "b,0,1\nb,1,1\n"
               "c,0,5\nc,0.5,5\nc,1,5\n");
    const fs::path out1 = dir / "dist_w1.csv";
    const fs::path out8 = dir / "dist_w8.csv";
    REQUIRE(run_cli("distance " + quoted(data) + " --out " + quoted(out1) + " --workers 1") == 0);
    REQUIRE(run_cli("distance " + quoted(data) + " --out " + quoted(out8) + " --workers 8") == 0);
    CHECK(read_file(out1) == read_file(out8));
    const auto [matrix, ids] = etdclust::io::read_distance_csv(out1);
    CHECK(ids == std::vector<std::string>{"a", "b", "c"});
    CHECK(matrix(0, 1) == 1.0);
    CHECK(matrix(0, 2) == 5.0);
    CHECK(matrix(1, 2) == 4.0);
}

TEST_CASE("cluster with truth reports metrics and the silhouette series") {
    const fs::path dir = work_dir();
    const fs::path config = dir / "sim_cluster.cfg";
    write_file(config,
               "scenario = S4\nn_samples = 45\nn_clusters = 3\ngrid_size = 20\ndim = 3\n"
               "contamination = C1\noutlier_rate = 0.1\nseed = 31\n");
    const fs::path data = dir / "cluster_data.csv";
    REQUIRE(run_cli("simulate " + quoted(config) + " --out " + quoted(data)) == 0);
    const fs::path report_path = dir / "report.txt";
    REQUIRE(run_cli("cluster " + quoted(data) + " --method rtlp --truth " +
                    quoted(dir / "cluster_data_truth.csv") + " --out " +
                    quoted(report_path)) == 0);
    const auto report = etdclust::io::RunReport::load(report_path);
    CHECK(report.method == "rtlp");
    REQUIRE(report.theta_star.has_value());
    REQUIRE(report.metrics.has_value());
    CHECK(report.silhouette_trace.size() == 20);
    CHECK(fs::exists(dir / "report_silhouette.csv"));
}

TEST_CASE("cluster supports a fixed k for the baselines") {
    const fs::path dir = work_dir();
    const fs::path data = dir / "hier_data.csv";
    std::ostringstream csv;
    csv << "curve_id,t,v1\n";
    for (int i = 0; i < 9; ++i) {
        const double level = 10.0 * (i / 3);
        csv << "c" << i << ",0," << level + 0.01 * i << "\n";
        csv << "c" << i << ",1," << level + 0.01 * i << "\n";
    }
    write_file(data, csv.str());
    const fs::path report_path = dir / "hier_report.txt";
    REQUIRE(run_cli("cluster " + quoted(data) + " --method hier --k 3 --out " +
                    quoted(report_path)) == 0);
    const auto report = etdclust::io::RunReport::load(report_path);
    REQUIRE(report.k_star.has_value());
    CHECK(*report.k_star == 3);
    CHECK(report.clusters.size() == 3);
}

TEST_CASE("cluster can reuse an exported distance matrix") {
    const fs::path dir = work_dir();
    const fs::path data = dir / "reuse_data.csv";
    std::ostringstream csv;
    csv << "curve_id,t,v1\n";
    for (int i = 0; i < 8; ++i) {
        const double level = 10.0 * (i / 4);
        csv << "c" << i << ",0," << level + 0.1 * i << "\n";
        csv << "c" << i << ",1," << level + 0.1 * i << "\n";
    }
    write_file(data, csv.str());
    const fs::path dist = dir / "reuse_dist.csv";
    REQUIRE(run_cli("distance " + quoted(data) + " --out " + quoted(dist)) == 0);
    const fs::path direct = dir / "reuse_direct.txt";
    const fs::path from_matrix = dir / "reuse_matrix.txt";
    REQUIRE(run_cli("cluster " + quoted(data) + " --method kmedoids --k 2 --out " +
                    quoted(direct)) == 0);
    REQUIRE(run_cli("cluster " + quoted(data) + " --method kmedoids --k 2 --distances " +
                    quoted(dist) + " --out " + quoted(from_matrix)) == 0);
    CHECK(read_file(direct) == read_file(from_matrix));
}

TEST_CASE("cluster accepts raw-hour input with --normalize-time") {
    const fs::path dir = work_dir();
    const fs::path data = dir / "hours.csv";
    write_file(data,
               "curve_id,t,v1\n"
               "a,0,0\na,24,0\na,48,0\n"
               "b,0,9\nb,36,9\nb,72,9\n");
    const fs::path report_path = dir / "hours_report.txt";
    CHECK(run_cli("cluster " + quoted(data) + " --method kmedoids --k 2 --out " +
                  quoted(report_path) + " --normalize-time") == 0);
    // without normalization the same input is a data error (times outside [0,1])
    CHECK(run_cli("cluster " + quoted(data) + " --method kmedoids --k 2 --out " +
                  quoted(dir / "unused.txt")) == 2);
}

TEST_CASE("experiment table production and determinism across workers") {
    const fs::path dir = work_dir();
    const fs::path config = dir / "exp.cfg";
    write_file(config,
               "scenarios = S4\ncontaminations = C1\np_curves = 0\nmethods = rtlp\n"
               "n_samples = 30\nn_clusters = 3\ngrid_size = 12\ndim = 3\n"
               "replicates = 2\nseed = 3\n");
    const fs::path out1 = dir / "table_w1.txt";
    const fs::path out4 = dir / "table_w4.txt";
    REQUIRE(run_cli("experiment " + quoted(config) + " --out " + quoted(out1) +
                    " --workers 1") == 0);
    REQUIRE(run_cli("experiment " + quoted(config) + " --out " + quoted(out4) +
                    " --workers 4") == 0);
    CHECK(read_file(out1) == read_file(out4));
    const std::string cells = read_file(dir / "table_w1_cells.csv");
    CHECK_FALSE(cells.empty());
    CHECK(cells == read_file(dir / "table_w4_cells.csv"));
    CHECK(read_file(out1).find("rtlp") != std::string::npos);
}

TEST_CASE("experiment supports the univariate marginal mode") {
    const fs::path dir = work_dir();
    const fs::path config = dir / "exp_uni.cfg";
    write_file(config,
               "scenarios = S4\ncontaminations = C1\np_curves = 0\nmethods = rtlp\n"
               "n_samples = 30\nn_clusters = 3\ngrid_size = 12\ndim = 3\n"
               "mode = univariate\nreplicates = 1\nseed = 5\n");
    const fs::path out = dir / "uni_table.txt";
    REQUIRE(run_cli("experiment " + quoted(config) + " --out " + quoted(out)) == 0);
    const std::string table = read_file(out);
    CHECK(table.find("univariate") != std::string::npos);
}

TEST_CASE("truth id mismatches are data errors") {
    const fs::path dir = work_dir();
    const fs::path data = dir / "mismatch.csv";
    write_file(data, "curve_id,t,v1\na,0,0\na,1,0\nb,0,1\nb,1,1\n");
    const fs::path truth = dir / "mismatch_truth.csv";
    write_file(truth, "curve_id,label\na,1\nz,2\n");
    CHECK(run_cli("cluster " + quoted(data) + " --method kmedoids --k 2 --truth " +
                  quoted(truth) + " --out " + quoted(dir / "m.txt")) == 2);
}

TEST_CASE("exit codes distinguish usage, data and config errors") {
    const fs::path dir = work_dir();
    CHECK(run_cli("clusterize") == 1);                       // unknown subcommand
    CHECK(run_cli("cluster") == 1);                          // missing arguments
    const fs::path missing = dir / "does_not_exist.csv";
    CHECK(run_cli("cluster " + quoted(missing) + " --out " + quoted(dir / "r.txt")) == 2);
    const fs::path bad_config = dir / "bad.cfg";
    write_file(bad_config, "scenario = S4\nnot_a_key = 1\n");
    CHECK(run_cli("simulate " + quoted(bad_config) + " --out " + quoted(dir / "x.csv")) == 1);
    // invalid method parameters are a config error too
    const fs::path data = dir / "tiny.csv";
    write_file(data, "curve_id,t,v1\na,0,0\na,1,0\nb,0,1\nb,1,1\n");
    const fs::path method_cfg = dir / "method.cfg";
    write_file(method_cfg, "alpha = 2.0\n");
    CHECK(run_cli("cluster " + quoted(data) + " --config " + quoted(method_cfg) +
                  " --out " + quoted(dir / "r2.txt")) == 1);
}

}  // TEST_SUITE
