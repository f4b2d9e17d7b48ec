#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "etdclust/rtlp.hpp"
#include "test_util.hpp"

using namespace etdclust;
using testutil::matrix_from_upper;

namespace {

bool is_valid_partition(const Partition& p) {
    std::vector<char> seen(p.total, 0);
    if (p.sets.size() != p.cores.size()) return false;
    for (std::size_t c = 0; c < p.sets.size(); ++c) {
        if (c > 0 && p.sets[c].size() > p.sets[c - 1].size()) return false;
        bool core_found = false;
        for (int i : p.sets[c]) {
            if (i < 0 || i >= p.total || seen[i]) return false;
            seen[i] = 1;
            if (i == p.cores[c]) core_found = true;
        }
        if (!core_found) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; });
}

/// Two tight pairs and one isolate; threshold 2 separates the pairs.
DistanceMatrix five_point_toy() {
    //      1    2    3    4
    // 0    1   10   10   20
    // 1        10   10   20
    // 2              1   20
    // 3                  20
    return matrix_from_upper(5, {{1, 10, 10, 20}, {10, 10, 20}, {1, 20}, {20}});
}

}  // namespace

TEST_SUITE("rtlp") {

TEST_CASE("neighbours use a strict threshold and include the point itself") {
    const DistanceMatrix d = matrix_from_upper(3, {{1, 5}, {5}});
    const std::vector<int> all{0, 1, 2};
    CHECK(neighbours(0, all, d, 2.0) == std::vector<int>{0, 1});
    CHECK(neighbours(0, all, d, 100.0) == all);
    CHECK(neighbours(0, all, d, 0.5) == std::vector<int>{0});
    // strictness: threshold equal to a distance excludes it
    CHECK(neighbours(0, all, d, 1.0) == std::vector<int>{0});
}

TEST_CASE("first layer emits one group when everything is mutually close") {
    const DistanceMatrix d = matrix_from_upper(4, {{1, 1, 1}, {1, 1}, {1}});
    const Partition g = first_layer(d, 2.0);
    REQUIRE(g.sets.size() == 1);
    CHECK(g.sets[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(g.cores[0] == 0);  // argmax tie resolves to the smallest index
}

TEST_CASE("first layer emits singletons below every distance") {
    const DistanceMatrix d = matrix_from_upper(3, {{1, 2}, {3}});
    const Partition g = first_layer(d, 0.5);
    REQUIRE(g.sets.size() == 3);
    for (std::size_t c = 0; c < 3; ++c) CHECK(g.sets[c].size() == 1);
}

TEST_CASE("first layer separates two pairs and an isolate") {
    const Partition g = first_layer(five_point_toy(), 2.0);
    REQUIRE(g.sets.size() == 3);
    CHECK(g.sets[0] == std::vector<int>{0, 1});
    CHECK(g.sets[1] == std::vector<int>{2, 3});
    CHECK(g.sets[2] == std::vector<int>{4});
    CHECK(is_valid_partition(g));
}

TEST_CASE("second layer keeps a single group unchanged") {
    const DistanceMatrix d = matrix_from_upper(3, {{1, 1}, {1}});
    const Partition g = first_layer(d, 2.0);
    const Partition c = second_layer(g, d, 2.0);
    REQUIRE(c.sets.size() == 1);
    CHECK(c.sets[0] == std::vector<int>{0, 1, 2});
}

TEST_CASE("second layer merges a group whose core neighbours the seed cluster") {
    // first layer gives {0,1,2} around core 1 and the leftover {3};
    // 3 is a neighbour of member 2, so the groups merge
    const DistanceMatrix d = matrix_from_upper(4, {{1, 1.8, 3.0}, {1.5, 2.6}, {1}});
    const Partition g = first_layer(d, 1.7);
    REQUIRE(g.sets.size() == 2);
    CHECK(g.sets[0] == std::vector<int>{0, 1, 2});
    CHECK(g.sets[1] == std::vector<int>{3});
    const Partition c = second_layer(g, d, 1.7);
    REQUIRE(c.sets.size() == 1);
    CHECK(c.sets[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("second layer does not extend the neighbour union after a merge") {
    // star A = {0,1,2,3} around core 0, path B = {5,4,6} around core 4,
    // singleton C = {7}; 3-4 bridges A to B, 5-7 bridges B to C.
    // After B merges into A's cluster, 7 must stay separate because the
    // neighbour union was formed from A's members alone.
    const DistanceMatrix d = matrix_from_upper(
        8, {
               // 1    2    3    4    5    6    7
               {1.0, 1.0, 1.0, 5.0, 5.0, 5.0, 5.0},  // 0
               {2.5, 2.5, 5.0, 5.0, 5.0, 5.0},       // 1
               {2.5, 5.0, 5.0, 5.0, 5.0},            // 2
               {1.9, 5.0, 5.0, 5.0},                 // 3
               {1.0, 1.0, 2.5},                      // 4
               {2.5, 1.9},                           // 5
               {5.0},                                // 6
           });
    const double threshold = 2.0;
    const Partition g = first_layer(d, threshold);
    REQUIRE(g.sets.size() == 3);
    CHECK(g.sets[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(g.cores[0] == 0);
    CHECK(g.sets[1] == std::vector<int>{4, 5, 6});
    CHECK(g.cores[1] == 4);
    CHECK(g.sets[2] == std::vector<int>{7});

    const Partition c = second_layer(g, d, threshold);
    REQUIRE(c.sets.size() == 2);
    CHECK(c.sets[0] == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
    CHECK(c.sets[1] == std::vector<int>{7});
}

TEST_CASE("recognize keeps all clusters when every size passes the guard") {
    const DistanceMatrix d = five_point_toy();
    const Partition g = first_layer(d, 2.0);
    const Partition c = second_layer(g, d, 2.0);
    const Recognition rec = recognize(c, d, 0.15, 0.87);  // guard 0.75, all pass
    CHECK(rec.primary.sets.size() == 3);
    CHECK(rec.outliers.empty());
    CHECK_FALSE(rec.no_primary);
}

TEST_CASE("recognize declares a far singleton an outlier") {
    const DistanceMatrix d = five_point_toy();
    const Partition g = first_layer(d, 2.0);
    const Partition c = second_layer(g, d, 2.0);
    // guard N*p_min = 5*0.3 = 1.5: the pairs pass, the singleton does not;
    // its distance 20 to both cores exceeds the 0.87-quantile of the
    // within-cluster core distances {0, 1}
    const Recognition rec = recognize(c, d, 0.3, 0.87);
    CHECK(rec.primary.sets.size() == 2);
    CHECK(rec.outliers == std::vector<int>{4});
}

TEST_CASE("recognize reassigns by the smallest empirical CDF value") {
    // cluster 0 = {0..4} core 0 with core distances {0,1,2,3,4};
    // cluster 1 = {5..9} core 5 with core distances {0,1,2,3,4};
    // X = 10 sits at 1.5 from core 0 (CDF 2/5) and 3.5 from core 5 (CDF 4/5),
    // both below the 0.87-quantile cutoffs, so X joins cluster 0.
    DistanceMatrix d(11);
    for (int i = 1; i < 5; ++i) d.set(0, i, i);
    for (int i = 6; i < 10; ++i) d.set(5, i, i - 5);
    for (int i = 0; i < 5; ++i) {
        for (int j = 5; j < 10; ++j) d.set(i, j, 50.0);
    }
    for (int i = 1; i < 5; ++i) {
        for (int j = i + 1; j < 5; ++j) d.set(i, j, std::abs(i - j));
    }
    for (int i = 6; i < 10; ++i) {
        for (int j = i + 1; j < 10; ++j) d.set(i, j, std::abs(i - j));
    }
    d.set(10, 0, 1.5);
    d.set(10, 5, 3.5);
    for (int i = 1; i < 5; ++i) d.set(10, i, 2.0);
    for (int i = 6; i < 10; ++i) d.set(10, i, 4.0);

    Partition clusters;
    clusters.total = 11;
    clusters.sets = {{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}, {10}};
    clusters.cores = {0, 5, 10};
    const Recognition rec = recognize(clusters, d, 0.15, 0.87);  // guard 1.65
    REQUIRE(rec.primary.sets.size() == 2);
    CHECK(rec.outliers.empty());
    CHECK(rec.primary.sets[0] == std::vector<int>{0, 1, 2, 3, 4, 10});
}

TEST_CASE("recognize with no sufficiently large cluster returns all outliers") {
    const DistanceMatrix d = five_point_toy();
    Partition clusters;
    clusters.total = 5;
    clusters.sets = {{0, 1}, {2, 3}, {4}};
    clusters.cores = {0, 2, 4};
    const Recognition rec = recognize(clusters, d, 0.5, 0.87);  // guard 2.5 beats every size
    CHECK(rec.no_primary);
    CHECK(rec.primary.sets.empty());
    CHECK(rec.outliers == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(average_silhouette(rec, d) == 0.0);  // outliers contribute exactly 0
}

TEST_CASE("average silhouette matches the hand-computed two-pair value") {
    const DistanceMatrix d =
        matrix_from_upper(4, {{1, 10, 10}, {10, 10}, {1}});
    Recognition rec;
    rec.primary.total = 4;
    rec.primary.sets = {{0, 1}, {2, 3}};
    rec.primary.cores = {0, 2};
    CHECK(average_silhouette(rec, d) == doctest::Approx(0.9).epsilon(1e-12));
}

TEST_CASE("average silhouette is -1 with a single primary cluster") {
    const DistanceMatrix d = matrix_from_upper(3, {{1, 1}, {1}});
    Recognition rec;
    rec.primary.total = 3;
    rec.primary.sets = {{0, 1, 2}};
    rec.primary.cores = {0};
    CHECK(average_silhouette(rec, d) == -1.0);
}

TEST_CASE("cluster of two identical curves yields one cluster and no outliers") {
    DistanceMatrix d(2);  // both distances zero
    const ClusteringResult result = rtlp_cluster(d);
    REQUIRE(result.primary.sets.size() == 1);
    CHECK(result.primary.sets[0] == std::vector<int>{0, 1});
    CHECK(result.outliers.empty());
}

TEST_CASE("cluster recovers three well-separated blobs with full agreement") {
    // 9 points in 3 blobs: within 1, across 40/80
    DistanceMatrix d(9);
    for (int i = 0; i < 9; ++i) {
        for (int j = i + 1; j < 9; ++j) {
            const int bi = i / 3;
            const int bj = j / 3;
            d.set(i, j, bi == bj ? 1.0 : 40.0 * std::abs(bi - bj));
        }
    }
    RtlpConfig config;
    config.p_min = 0.2;
    config.theta_grid.clear();  // full accepted range, the blob gaps sit high
    for (int i = 1; i <= 30; ++i) config.theta_grid.push_back(i / 100.0);
    const ClusteringResult result = rtlp_cluster(d, config);
    REQUIRE(result.primary.sets.size() == 3);
    CHECK(result.outliers.empty());
    const auto labels = result.labels();
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            CHECK((labels[i] == labels[j]) == (i / 3 == j / 3));
        }
    }
}

TEST_CASE("layers are invariant under strictly increasing distance maps") {
    CounterRng rng(21, RngStream::generic);
    for (int trial = 0; trial < 10; ++trial) {
        const auto samples = testutil::random_sparse_dataset(rng, 12, 2, 2, 10);
        const DistanceMatrix d = compute_distance_matrix(align_all(samples));
        DistanceMatrix mapped(d.size());
        for (int i = 0; i < d.size(); ++i) {
            for (int j = i + 1; j < d.size(); ++j) {
                const double v = d(i, j);
                mapped.set(i, j, std::exp(v) - 1.0 + v * v * v);  // strictly increasing
            }
        }
        const double theta = 0.15;
        const double t1 = DistanceSet(d).quantile(theta);
        const double t2 = DistanceSet(mapped).quantile(theta);
        const Partition g1 = first_layer(d, t1);
        const Partition g2 = first_layer(mapped, t2);
        CHECK(g1.sets == g2.sets);
        const Partition c1 = second_layer(g1, d, t1);
        const Partition c2 = second_layer(g2, mapped, t2);
        CHECK(c1.sets == c2.sets);
    }
}

TEST_CASE("results are identical for any worker count") {
    CounterRng rng(22, RngStream::generic);
    const auto samples = testutil::random_sparse_dataset(rng, 20, 2, 3, 12);
    const DistanceMatrix d = compute_distance_matrix(align_all(samples));
    RtlpConfig config;
    const ClusteringResult serial = rtlp_cluster(d, config);
    config.workers = 5;
    const ClusteringResult parallel = rtlp_cluster(d, config);
    CHECK(serial.theta_star == parallel.theta_star);
    CHECK(serial.primary.sets == parallel.primary.sets);
    CHECK(serial.outliers == parallel.outliers);
    CHECK(serial.silhouette_trace == parallel.silhouette_trace);
}

TEST_CASE("sweep output is a partition with silhouettes in range") {
    CounterRng rng(23, RngStream::generic);
    for (int trial = 0; trial < 8; ++trial) {
        const auto samples = testutil::random_sparse_dataset(rng, 15, 2, 2, 10);
        const DistanceMatrix d = compute_distance_matrix(align_all(samples));
        const ClusteringResult result = rtlp_cluster(d);
        CHECK(is_valid_partition(result.groups));
        CHECK(is_valid_partition(result.clusters));
        std::vector<char> seen(15, 0);
        for (const auto& set : result.primary.sets) {
            for (int i : set) {
                CHECK_FALSE(seen[i]);
                seen[i] = 1;
            }
        }
        for (int i : result.outliers) {
            CHECK_FALSE(seen[i]);
            seen[i] = 1;
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](char s) { return s != 0; }));
        for (const auto& [theta, s] : result.silhouette_trace) {
            CHECK(s >= -1.0);
            CHECK(s <= 1.0);
        }
    }
}

TEST_CASE("recognize never removes members from a surviving cluster") {
    CounterRng rng(24, RngStream::generic);
    for (int trial = 0; trial < 20; ++trial) {
        const auto samples = testutil::random_sparse_dataset(rng, 18, 2, 2, 10);
        const DistanceMatrix d = compute_distance_matrix(align_all(samples));
        const double threshold = DistanceSet(d).quantile(0.1);
        const Partition clusters = second_layer(first_layer(d, threshold), d, threshold);
        const Recognition rec = recognize(clusters, d, 0.15, 0.87);
        const double guard = 18 * 0.15;
        for (std::size_t c = 0; c < clusters.sets.size(); ++c) {
            if (static_cast<double>(clusters.sets[c].size()) <= guard) continue;
            // this cluster passed the guard: every member must remain in the
            // primary cluster that carries the same core
            const auto core_it = std::find(rec.primary.cores.begin(),
                                           rec.primary.cores.end(), clusters.cores[c]);
            REQUIRE(core_it != rec.primary.cores.end());
            const auto& grown =
                rec.primary.sets[core_it - rec.primary.cores.begin()];
            for (int member : clusters.sets[c]) {
                CHECK(std::find(grown.begin(), grown.end(), member) != grown.end());
            }
            CHECK(grown.size() >= clusters.sets[c].size());
        }
    }
}

TEST_CASE("config validation") {
    RtlpConfig config;
    config.p_min = 0.6;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = RtlpConfig{};
    config.alpha = 1.0;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = RtlpConfig{};
    config.theta_grid = {0.4};
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = RtlpConfig{};
    config.theta_grid.clear();
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

}  // TEST_SUITE
