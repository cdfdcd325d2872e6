#include <doctest.h>

#include <cmath>

#include "cgfl/evaluate.hpp"
#include "support.hpp"

using namespace cgfl;

namespace {

std::vector<VersionResult> versions_from_first_ranks(
    const std::vector<std::size_t>& firsts) {
    std::vector<VersionResult> versions;
    for (std::size_t i = 0; i < firsts.size(); ++i)
        versions.push_back({"v" + std::to_string(i + 1), firsts[i],
                            static_cast<double>(firsts[i])});
    return versions;
}

// Independent exact Wilcoxon: walk every sign vector explicitly and
// recompute the rank sum from scratch per assignment.
double wilcoxon_enumeration_oracle(const std::vector<double>& diffs,
                                   bool less_sided) {
    std::vector<double> abs_diffs;
    std::vector<int> signs;
    for (double d : diffs) {
        if (d == 0.0) continue;
        abs_diffs.push_back(std::fabs(d));
        signs.push_back(d > 0.0 ? 1 : -1);
    }
    const std::size_t n = abs_diffs.size();
    // average ranks, recomputed naively
    std::vector<double> ranks(n);
    for (std::size_t i = 0; i < n; ++i) {
        double below = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (abs_diffs[j] < abs_diffs[i]) ++below;
            if (abs_diffs[j] == abs_diffs[i]) ++equal;
        }
        ranks[i] = below + (equal + 1.0) / 2.0;
    }
    double observed = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (signs[i] > 0) observed += ranks[i];
    std::size_t hits = 0;
    const std::size_t total = std::size_t{1} << n;
    for (std::size_t mask = 0; mask < total; ++mask) {
        double w = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) w += ranks[i];
        if (less_sided ? (w <= observed) : (w >= observed)) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

TEST_CASE("top_k counting") {
    const auto versions = versions_from_first_ranks({1, 4, 12});
    CHECK(top_k(versions, 1) == 1);
    CHECK(top_k(versions, 5) == 2);
    CHECK(top_k(versions, 10) == 2);
    CHECK(top_k(std::vector<VersionResult>{}, 3) == 0);
    CHECK_THROWS_AS(top_k(versions, 0), EvaluationError);

    const auto all_first = versions_from_first_ranks({1, 1, 1, 1});
    CHECK(top_k(all_first, 1) == 4);
}

TEST_CASE("mfr and mar") {
    CHECK(mfr(versions_from_first_ranks({2, 4})) == doctest::Approx(3.0));
    const std::vector<VersionResult> single{{"v1", 7, 7.0}};
    CHECK(mfr(single) == doctest::Approx(7.0));
    CHECK(mar(single) == doctest::Approx(7.0));
    const std::vector<VersionResult> two{{"A", 2, 3.0}, {"B", 5, 5.0}};
    CHECK(mar(two) == doctest::Approx(4.0));
    CHECK_THROWS_AS(mfr(std::vector<VersionResult>{}), EvaluationError);
}

TEST_CASE("mfr never exceeds mar") {
    Rng rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<VersionResult> versions;
        const std::size_t count = 1 + rng.index(8);
        for (std::size_t v = 0; v < count; ++v) {
            const std::size_t first = 1 + rng.index(20);
            versions.push_back({"v", first,
                                static_cast<double>(first) + rng.uniform(0, 10)});
        }
        CHECK(mfr(versions) <= mar(versions) + 1e-12);
    }
}

TEST_CASE("rimp") {
    const std::vector<std::size_t> same{3, 8, 1};
    CHECK(rimp(same, same) == doctest::Approx(100.0));
    CHECK(rimp(std::vector<std::size_t>{1, 3}, std::vector<std::size_t>{2, 6}) ==
          doctest::Approx(50.0));
    CHECK(rimp(std::vector<std::size_t>{10}, std::vector<std::size_t>{5}) ==
          doctest::Approx(200.0));
    CHECK_THROWS_AS(rimp(std::vector<std::size_t>{1}, std::vector<std::size_t>{1, 2}),
                    EvaluationError);
    CHECK_THROWS_AS(rimp(std::vector<std::size_t>{1}, std::vector<std::size_t>{0}),
                    EvaluationError);
}

TEST_CASE("wilcoxon: five uniform-sign differences") {
    std::vector<std::pair<double, double>> pairs;
    for (int i = 1; i <= 5; ++i)
        pairs.emplace_back(static_cast<double>(i), static_cast<double>(i + 1));
    const auto result = wilcoxon_signed_rank(pairs);
    CHECK(result.exact);
    CHECK(result.less == doctest::Approx(1.0 / 32.0));
    CHECK(result.greater == doctest::Approx(1.0));
    CHECK(result.two_sided == doctest::Approx(2.0 / 32.0));
}

TEST_CASE("wilcoxon rejects all-zero differences") {
    const std::vector<std::pair<double, double>> pairs{{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS(wilcoxon_signed_rank(pairs), EvaluationError);
}

TEST_CASE("wilcoxon sign symmetry: greater on negated equals less") {
    Rng rng(44);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::pair<double, double>> pairs, negated;
        const std::size_t n = 1 + rng.index(9);
        bool any_nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = static_cast<double>(
                static_cast<int>(rng.index(9)) - 4);
            any_nonzero |= d != 0.0;
            pairs.emplace_back(d, 0.0);
            negated.emplace_back(-d, 0.0);
        }
        if (!any_nonzero) continue;
        const auto forward = wilcoxon_signed_rank(pairs);
        const auto backward = wilcoxon_signed_rank(negated);
        REQUIRE(forward.greater == doctest::Approx(backward.less));
        REQUIRE(forward.less == doctest::Approx(backward.greater));
    }
}

TEST_CASE("exact wilcoxon matches the sign-enumeration oracle") {
    Rng rng(55);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng.index(10);
        std::vector<double> diffs;
        std::vector<std::pair<double, double>> pairs;
        bool any_nonzero = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double d =
                static_cast<double>(static_cast<int>(rng.index(11)) - 5);
            any_nonzero |= d != 0.0;
            diffs.push_back(d);
            pairs.emplace_back(d, 0.0);
        }
        if (!any_nonzero) continue;
        const auto result = wilcoxon_signed_rank(pairs);
        REQUIRE(result.exact);
        REQUIRE(result.less ==
                doctest::Approx(wilcoxon_enumeration_oracle(diffs, true)));
        REQUIRE(result.greater ==
                doctest::Approx(wilcoxon_enumeration_oracle(diffs, false)));
    }
}

TEST_CASE("normal approximation is sane on a large sample") {
    std::vector<std::pair<double, double>> pairs;
    Rng rng(66);
    for (int i = 0; i < 40; ++i) {
        const double base = rng.uniform(0, 100);
        pairs.emplace_back(base - rng.uniform(0, 5) - 0.1, base);
    }
    const auto result = wilcoxon_signed_rank(pairs);
    CHECK_FALSE(result.exact);
    CHECK(result.less < 0.001);
    CHECK(result.greater > 0.99);
}

TEST_CASE("report invariants and serialization") {
    const auto report = make_report(versions_from_first_ranks({1, 4, 12}));
    CHECK(report.top1 <= report.top5);
    CHECK(report.top5 <= report.top10);
    CHECK(report.top10 <= report.versions.size());
    const std::string json = report_json(report);
    CHECK(json.find("\"top5\": 2") != std::string::npos);
    const std::string csv = report_csv(report);
    CHECK(csv.rfind("version,first_rank,avg_rank\n", 0) == 0);
}

TEST_CASE("box stats quartiles") {
    const auto stats = box_stats({4.0, 1.0, 3.0, 2.0, 5.0});
    CHECK(stats.min == 1.0);
    CHECK(stats.q1 == doctest::Approx(2.0));
    CHECK(stats.median == doctest::Approx(3.0));
    CHECK(stats.q3 == doctest::Approx(4.0));
    CHECK(stats.max == 5.0);
}
