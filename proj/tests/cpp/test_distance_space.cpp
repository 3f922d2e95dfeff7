#include <doctest.h>

#include "oracles.hpp"
#include "tspan/distance_space.hpp"
#include "tspan/errors.hpp"
#include "tspan/real_tree.hpp"

using namespace tspan;

namespace {

// Five-point table realized by subtrees of a tree; d(v,z) = 0 and the
// triangle inequality fails at (x,z,y).
DistanceSpace five_point_table() {
    const auto r = [](int v) { return Rational(v); };
    return DistanceSpace({"x", "y", "z", "v", "w"},
                         {{r(0), r(9), r(1), r(6), r(9)},
                          {r(9), r(0), r(3), r(1), r(10)},
                          {r(1), r(3), r(0), r(0), r(2)},
                          {r(6), r(1), r(0), r(0), r(7)},
                          {r(9), r(10), r(2), r(7), r(0)}});
}

// Four points with two long diagonals; its tight span is an octagon.
DistanceSpace octagon_distance() {
    const auto r = [](int v) { return Rational(v); };
    return DistanceSpace({"w", "x", "y", "z"},
                         {{r(0), r(1), r(3), r(1)},
                          {r(1), r(0), r(1), r(3)},
                          {r(3), r(1), r(0), r(1)},
                          {r(1), r(3), r(1), r(0)}});
}

DistanceSpace line_metric() {
    // Points at 0, 1, 2, 3 on a line.
    RationalMatrix table(4, RationalVector(4));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) table[i][j] = Rational(std::abs(i - j));
    }
    return DistanceSpace({"p0", "p1", "p2", "p3"}, std::move(table));
}

}  // namespace

TEST_CASE("construction validates the table") {
    CHECK_THROWS_AS(DistanceSpace({}, {}), ParseError);
    CHECK_THROWS_AS(DistanceSpace({"a", "a"}, RationalMatrix(2, RationalVector(2))),
                    ParseError);
    CHECK_THROWS_AS(DistanceSpace({"a", ""}, RationalMatrix(2, RationalVector(2))),
                    ParseError);
    CHECK_THROWS_AS(DistanceSpace({"a", "b"},
                                  {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}}),
                    ParseError);
    CHECK_THROWS_AS(DistanceSpace({"a", "b"},
                                  {{Rational(0), Rational(-1)}, {Rational(-1), Rational(0)}}),
                    ParseError);
}

TEST_CASE("triangle check reports the first violating triple") {
    const auto d = five_point_table();
    const auto certificate = check_metric(d);
    REQUIRE(certificate.kind == CertificateKind::MetricViolation);
    CHECK(certificate.witness == std::vector<std::string>{"x", "z", "y"});
    CHECK(certificate.lhs == 9);
    CHECK(certificate.rhs == 4);
    CHECK(recheck_certificate(d, certificate));
}

TEST_CASE("one-point and all-zero spaces are metrics") {
    CHECK(check_metric(DistanceSpace({"a"}, {{Rational(0)}})).ok());
    CHECK(check_metric(DistanceSpace({"a", "b", "c", "d", "e"},
                                     RationalMatrix(5, RationalVector(5, Rational(0)))))
              .ok());
}

TEST_CASE("line metric satisfies the four-point condition") {
    CHECK(check_four_point(line_metric()).ok());
    CHECK(testing::four_point_oracle(line_metric()));
}

TEST_CASE("square metric violates the four-point condition") {
    // Two pairs at distance 2, four pairs at distance 1.
    const auto r = [](int v) { return Rational(v); };
    const DistanceSpace square({"a", "b", "c", "d"},
                               {{r(0), r(1), r(2), r(1)},
                                {r(1), r(0), r(1), r(2)},
                                {r(2), r(1), r(0), r(1)},
                                {r(1), r(2), r(1), r(0)}});
    REQUIRE(check_metric(square).ok());
    const auto certificate = check_four_point(square);
    CHECK_FALSE(certificate.ok());
    CHECK_FALSE(testing::four_point_oracle(square));
    CHECK(recheck_certificate(square, certificate));
}

TEST_CASE("tree leaf metrics are additive") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        const auto [d, rep] = random_subtree_distance(rng(), 1 + testing::below(rng, 5),
                                                      2 + testing::below(rng, 12));
        // Restrict the generator to singleton subtrees: anchor leaves.
        const auto dist = rep.tree.vertex_distances();
        const std::size_t n = std::min<std::size_t>(rep.tree.vertex_count(), 5);
        std::vector<std::string> labels;
        RationalMatrix table(n, RationalVector(n));
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("t" + std::to_string(i));
            for (std::size_t j = 0; j < n; ++j) table[i][j] = dist[i][j];
        }
        const DistanceSpace leaf_metric(labels, std::move(table));
        CHECK(check_four_point(leaf_metric).ok());
        CHECK(testing::four_point_oracle(leaf_metric));
    }
}

TEST_CASE("four-point verdict matches the multiset oracle on random tables") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const auto d = testing::random_distance_space(rng, 2 + testing::below(rng, 4));
        CHECK(check_four_point(d).ok() == testing::four_point_oracle(d));
    }
}

TEST_CASE("five-point table satisfies the extended condition but the octagon fails") {
    CHECK(check_extended_four_point(five_point_table()).ok());

    const auto certificate = check_extended_four_point(octagon_distance());
    REQUIRE(certificate.kind == CertificateKind::ExtFourPointViolation);
    CHECK(certificate.witness == std::vector<std::string>{"w", "x", "y", "z"});
    CHECK(certificate.lhs == 6);
    CHECK(certificate.rhs == 3);
    CHECK(recheck_certificate(octagon_distance(), certificate));
}

TEST_CASE("three-point spaces always satisfy the extended condition") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const auto d = testing::random_distance_space(rng, 1 + testing::below(rng, 3));
        CHECK(check_extended_four_point(d).ok());
    }
}

TEST_CASE("metric plus extended condition implies the classical condition") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        const auto metric = testing::random_metric(rng, 2 + testing::below(rng, 5));
        const bool classical = check_four_point(metric.space()).ok();
        const bool extended = check_extended_four_point(metric.space()).ok();
        CHECK(classical == extended);
    }
}

TEST_CASE("restriction takes principal submatrices") {
    const auto d = five_point_table();
    const auto sub = restrict(d, {"x", "y", "z"});
    CHECK(sub.at(0, 1) == 9);
    CHECK(sub.at(0, 2) == 1);
    CHECK(sub.at(1, 2) == 3);

    const auto all = restrict(d, d.labels());
    CHECK(all.table() == d.table());

    const auto one = restrict(d, {"w"});
    CHECK(one.size() == 1);
    CHECK(one.at(0, 0) == 0);

    CHECK_THROWS_AS(restrict(d, {"nope"}), UnknownLabelError);
    CHECK_THROWS_AS(restrict(d, {}), ParseError);
}

TEST_CASE("violation certificates survive restriction to their witness") {
    const auto d = five_point_table();
    const auto certificate = check_metric(d);
    const auto sub = restrict(d, certificate.witness);
    const auto again = check_metric(sub);
    CHECK_FALSE(again.ok());
    CHECK(recheck_certificate(sub, certificate));
}
