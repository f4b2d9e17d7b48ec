#include <doctest.h>

#include <cmath>
#include <vector>

#include "etdclust/metrics.hpp"
#include "etdclust/rng.hpp"

using namespace etdclust;

namespace {

/// Pair-counting ARI oracle: with a = pairs together in both partitions,
/// b/c = together in exactly one, d = apart in both,
/// ARI = 2(ad - bc) / ((a+b)(b+d) + (a+c)(c+d)).
double pair_counting_ari(const std::vector<int>& la, const std::vector<int>& lb) {
    double a = 0;
    double b = 0;
    double c = 0;
    double d = 0;
    const std::size_t n = la.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool same_a = la[i] == la[j];
            const bool same_b = lb[i] == lb[j];
            if (same_a && same_b) ++a;
            else if (same_a) ++b;
            else if (same_b) ++c;
            else ++d;
        }
    }
    const double denom = (a + b) * (b + d) + (a + c) * (c + d);
    if (denom == 0.0) return 1.0;  // degenerate, partitions necessarily equal
    return 2.0 * (a * d - b * c) / denom;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("identical partitions score one") {
    const std::vector<int> labels{1, 1, 2, 2, 3};
    CHECK(adjusted_rand_index(labels, labels) == 1.0);
}

TEST_CASE("label permutations do not change the index") {
    const std::vector<int> a{1, 1, 2, 2, 3, 3};
    const std::vector<int> b{7, 7, -1, -1, 0, 0};
    CHECK(adjusted_rand_index(a, b) == 1.0);
}

TEST_CASE("worked contingency example gives zero") {
    const std::vector<int> a{1, 1, 2, 2};
    const std::vector<int> b{1, 1, 1, 2};
    CHECK(adjusted_rand_index(a, b) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("formula agrees with the pair-counting oracle on random partitions") {
    CounterRng rng(41, RngStream::generic);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        std::vector<int> a(n);
        std::vector<int> b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.next_below(4));
            b[i] = static_cast<int>(rng.next_below(4));
        }
        bool degenerate = false;
        const double fast = adjusted_rand_index(a, b, &degenerate);
        if (!degenerate) {
            CHECK(fast == doctest::Approx(pair_counting_ari(a, b)).epsilon(1e-12));
        }
    }
}

TEST_CASE("ari is symmetric in its arguments") {
    CounterRng rng(42, RngStream::generic);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + static_cast<int>(rng.next_below(8));
        std::vector<int> a(n);
        std::vector<int> b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = static_cast<int>(rng.next_below(3));
            b[i] = static_cast<int>(rng.next_below(3));
        }
        CHECK(adjusted_rand_index(a, b) == adjusted_rand_index(b, a));
    }
}

TEST_CASE("degenerate partitions fall back to equality") {
    bool degenerate = false;
    const std::vector<int> singletons_a{1, 2, 3};
    const std::vector<int> singletons_b{5, 6, 7};
    CHECK(adjusted_rand_index(singletons_a, singletons_b, &degenerate) == 1.0);
    CHECK(degenerate);

    const std::vector<int> one_a{1, 1, 1};
    CHECK(adjusted_rand_index(one_a, one_a, &degenerate) == 1.0);
    CHECK(degenerate);

    // all-singletons vs all-one-cluster has a nonzero denominator and
    // scores 0 through the regular formula
    CHECK(adjusted_rand_index(singletons_a, one_a, &degenerate) == 0.0);
    CHECK_FALSE(degenerate);
}

TEST_CASE("outlier rates from set arithmetic") {
    SUBCASE("perfect detection") {
        const std::vector<int> truth{1, 2};
        const auto [p_c, p_f] = outlier_rates(truth, truth, 10);
        REQUIRE(p_c.has_value());
        CHECK(*p_c == 1.0);
        CHECK(p_f == 0.0);
    }
    SUBCASE("nothing detected") {
        const std::vector<int> truth{1, 2};
        const auto [p_c, p_f] = outlier_rates(truth, {}, 10);
        REQUIRE(p_c.has_value());
        CHECK(*p_c == 0.0);
        CHECK(p_f == 0.0);
    }
    SUBCASE("partial overlap") {
        const std::vector<int> truth{0, 1};
        const std::vector<int> detected{1, 2};
        const auto [p_c, p_f] = outlier_rates(truth, detected, 10);
        REQUIRE(p_c.has_value());
        CHECK(*p_c == 0.5);
        CHECK(p_f == 0.125);
    }
    SUBCASE("no true outliers leaves p_c undefined") {
        const std::vector<int> detected{3};
        const auto [p_c, p_f] = outlier_rates({}, detected, 10);
        CHECK_FALSE(p_c.has_value());
        CHECK(p_f == 0.1);
    }
}

TEST_CASE("rates stay within [0, 1] on random sets") {
    CounterRng rng(43, RngStream::generic);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng.next_below(10));
        std::vector<int> truth;
        std::vector<int> detected;
        for (int i = 0; i < n; ++i) {
            if (rng.next_double() < 0.3) truth.push_back(i);
            if (rng.next_double() < 0.3) detected.push_back(i);
        }
        if (static_cast<int>(truth.size()) == n) truth.pop_back();
        const auto [p_c, p_f] = outlier_rates(truth, detected, n);
        if (p_c) {
            CHECK(*p_c >= 0.0);
            CHECK(*p_c <= 1.0);
        }
        CHECK(p_f >= 0.0);
        CHECK(p_f <= 1.0);
    }
}

TEST_CASE("evaluate_labels combines ari and outlier bookkeeping") {
    const std::vector<int> truth{1, 1, 2, 2, -1, -1};
    const std::vector<int> predicted{0, 0, 1, 1, -1, 2};
    const EvalReport report = evaluate_labels(truth, predicted);
    CHECK(report.n_true_outliers == 2);
    CHECK(report.n_detected == 1);
    CHECK(report.n_correct == 1);
    CHECK(report.n_false == 0);
    REQUIRE(report.p_c.has_value());
    CHECK(*report.p_c == 0.5);
    CHECK(report.p_f == 0.0);
    CHECK(report.ari_squared == doctest::Approx(report.ari * report.ari));
}

}  // TEST_SUITE
