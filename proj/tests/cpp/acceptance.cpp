// Acceptance suite: one pass/fail line per criterion, every tolerance
// pinned in code.  Exact rational comparisons throughout; the timed
// criteria also enforce their wall-clock budgets.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tspan/distance_space.hpp"
#include "tspan/diversity.hpp"
#include "tspan/domination.hpp"
#include "tspan/errors.hpp"
#include "tspan/polyhedron.hpp"
#include "tspan/real_tree.hpp"
#include "tspan/tightspan.hpp"

using namespace tspan;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

const auto r = [](int v) { return Rational(v); };

DistanceSpace five_point_table() {
    return DistanceSpace({"x", "y", "z", "v", "w"},
                         {{r(0), r(9), r(1), r(6), r(9)},
                          {r(9), r(0), r(3), r(1), r(10)},
                          {r(1), r(3), r(0), r(0), r(2)},
                          {r(6), r(1), r(0), r(0), r(7)},
                          {r(9), r(10), r(2), r(7), r(0)}});
}

DistanceSpace three_point() {
    return DistanceSpace({"x", "y", "z"},
                         {{r(0), r(3), r(1)}, {r(3), r(0), r(1)}, {r(1), r(1), r(0)}});
}

DistanceSpace octagon_distance() {
    return DistanceSpace({"w", "x", "y", "z"},
                         {{r(0), r(1), r(3), r(1)},
                          {r(1), r(0), r(1), r(3)},
                          {r(3), r(1), r(0), r(1)},
                          {r(1), r(3), r(1), r(0)}});
}

DistanceSpace pair_only() {
    RationalMatrix table(4, RationalVector(4, Rational(0)));
    table[1][2] = table[2][1] = Rational(4);
    return DistanceSpace({"w", "x", "y", "z"}, std::move(table));
}

DominatingMetric pinned_minimal_metric() {
    return DominatingMetric(Metric(DistanceSpace({"w", "x", "y", "z"},
                                                 {{r(0), r(1), r(3), r(2)},
                                                  {r(1), r(0), r(4), r(3)},
                                                  {r(3), r(4), r(0), r(1)},
                                                  {r(2), r(3), r(1), r(0)}})),
                            pair_only());
}

Diversity tripod_diversity() {
    SubsetFunction table(8, Rational(0));
    table[0b011] = table[0b101] = table[0b110] = Rational(4);
    table[0b111] = Rational(5);
    return Diversity({"a", "b", "c"}, std::move(table));
}

Diversity cardinality_diversity() {
    SubsetFunction table(8, Rational(0));
    for (SubsetMask a = 1; a < 8; ++a) table[a] = Rational(std::popcount(a) - 1);
    return Diversity({"x", "y", "z"}, std::move(table));
}

Diversity random_diameter(std::mt19937_64& rng, std::size_t n) {
    return diameter_diversity(testing::random_metric(rng, n));
}

Diversity random_l1(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        std::vector<RationalVector> points;
        for (std::size_t i = 0; i < n; ++i) {
            points.push_back({testing::random_rational(rng), testing::random_rational(rng)});
        }
        bool distinct = true;
        for (std::size_t i = 0; i < n && distinct; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (points[i] == points[j]) distinct = false;
            }
        }
        if (distinct) return l1_diversity(points);
    }
}

// A member of the gate set of `label`, derived from a randomly pinned
// dominating metric.
PointFunction sample_gate_member(std::mt19937_64& rng, const DistanceSpace& d,
                                 const std::string& label) {
    DominatingMetric rho = some_dominating_metric(d);
    for (int pins = static_cast<int>(testing::below(rng, 4)); pins > 0; --pins) {
        const std::size_t i = testing::below(rng, d.size());
        const std::size_t j = testing::below(rng, d.size());
        if (i != j) rho = pin_pair(rho, d.label(i), d.label(j));
    }
    return retract_to_td(d, kuratowski(rho, label)).function;
}

// --- criteria -------------------------------------------------------------

void criterion_five_point_regression() {
    const auto d = five_point_table();
    require(check_extended_four_point(d).ok(), "extended four-point condition must hold");

    const auto rep = build_subtree_representation(d);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const Rational value = subtree_distance(rep.tree, rep.subtrees.at(d.label(i)),
                                                    rep.subtrees.at(d.label(j)));
            require(value == d.at(i, j), "pair (" + d.label(i) + "," + d.label(j) +
                                             ") reproduced " + value.str() + " instead of " +
                                             d.at(i, j).str());
        }
    }

    const auto certificate = check_metric(d);
    require(certificate.kind == CertificateKind::MetricViolation, "triangle check must fail");
    require(certificate.witness == std::vector<std::string>{"x", "z", "y"},
            "violation must sit at (x,z,y)");
    require(certificate.lhs == 9 && certificate.rhs == 4, "violation must read 9 > 4");
}

void criterion_example_tight_spans() {
    // Three printed families of the three-point span, ranges corrected
    // to stay inside the constraint set.
    const auto d = three_point();
    std::vector<PointFunction> on_family;
    for (int k = 0; k <= 7; ++k) {  // [t, 3-t, 1-t], 0 <= t <= 1
        const Rational t = Rational(k) / 7;
        on_family.push_back({t, 3 - t, 1 - t});
    }
    for (int k = 0; k <= 6; ++k) {  // [t, 3-t, 0], 1 <= t <= 2
        const Rational t = 1 + Rational(k) / 6;
        on_family.push_back({t, 3 - t, Rational(0)});
    }
    for (int k = 0; k <= 4; ++k) {  // [3-t, t, 1-t], 0 <= t <= 1
        const Rational t = Rational(k) / 4;
        on_family.push_back({3 - t, t, 1 - t});
    }
    require(on_family.size() == 20, "exactly twenty sampled points");
    for (const auto& f : on_family) {
        require(in_td(d, f), "family point " + to_string(f) + " must lie in the span");
    }
    const std::vector<PointFunction> off_family = {
        {r(2), r(1), r(-1)},
        {Rational(1) / 2, Rational(5) / 2, Rational(3) / 4},
        {r(3), r(0), r(0)},
        {r(1), r(2), Rational(1) / 4},
        {Rational(3) / 2, Rational(3) / 2, Rational(1) / 2},
    };
    for (const auto& f : off_family) {
        require(!in_td(d, f), "off-family point " + to_string(f) + " must fail");
    }

    const auto octagon = octagon_distance();
    require(!check_extended_four_point(octagon).ok(),
            "octagon must violate the extended condition");
    const auto vertices = tight_span_vertices(octagon);
    require(vertices.size() == 8,
            "octagon span has " + std::to_string(vertices.size()) + " extreme points, not 8");
    for (const auto& vertex : vertices) {
        require(in_td(octagon, vertex), "every extreme point lies in the span");
    }
}

void criterion_pinned_metric_example() {
    const auto rho = pinned_minimal_metric();
    require(verify_minimal(rho), "the example metric must be certified minimal");

    const auto row_w = kuratowski(rho, "w");
    require(row_w == PointFunction{r(0), r(1), r(3), r(2)}, "row at w must be [0,1,3,2]");
    require(!in_td(rho.base(), row_w), "the row at w is not pointwise-minimal");

    const auto retracted = retract_to_td(rho.base(), row_w);
    require(retracted.function == PointFunction{r(0), r(1), r(3), r(0)},
            "retraction must land exactly on [0,1,3,0]");
}

void criterion_gate_distance_suite() {
    std::mt19937_64 rng(2024);
    std::size_t sampled_pairs = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = testing::random_distance_space(rng, 2 + testing::below(rng, 5));
        for (std::size_t i = 0; i < d.size(); ++i) {
            for (std::size_t j = i; j < d.size(); ++j) {
                const auto witness = verify_kappa_distance(d, d.label(i), d.label(j));
                require(witness.distance == d.at(i, j),
                        "gate distance must equal the table entry exactly");
            }
        }
        while (sampled_pairs < 2 * static_cast<std::size_t>(trial + 1) &&
               sampled_pairs < 100) {
            const std::size_t i = testing::below(rng, d.size());
            const std::size_t j = testing::below(rng, d.size());
            const auto g1 = sample_gate_member(rng, d, d.label(i));
            const auto g2 = sample_gate_member(rng, d, d.label(j));
            require(g1[i] == 0 && g2[j] == 0, "sampled members sit in their gate sets");
            require(d_inf(g1, g2) >= d.at(i, j),
                    "no gate pair may fall below the table entry");
            ++sampled_pairs;
        }
    }
    require(sampled_pairs == 100, "one hundred sampled gate pairs");
}

void criterion_subtree_roundtrip() {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t seed = rng();
        const std::size_t n_points = 1 + testing::below(rng, 6);
        const std::size_t tree_size = 2 + testing::below(rng, 19);  // up to 20 edges
        const auto [d, rep] = random_subtree_distance(seed, n_points, tree_size);
        require(check_extended_four_point(d).ok(),
                "induced distance must satisfy the extended condition");
        const auto rebuilt = build_subtree_representation(d);
        require(verify_subtree_representation(rebuilt, d).ok(),
                "rebuilt representation must verify exactly");
    }
}

void criterion_metric_equivalence() {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 200; ++trial) {
        const auto metric = testing::random_metric(rng, 2 + testing::below(rng, 5));
        const bool classical = check_four_point(metric.space()).ok();
        const bool extended = check_extended_four_point(metric.space()).ok();
        require(classical == extended, "four-point verdicts must agree on metrics");
    }
}

void criterion_contraction_suite() {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = testing::random_distance_space(rng, 2 + testing::below(rng, 5));
        const auto f0 = testing::random_point_in_pd(rng, d);

        ContractionOptions options;
        options.record_trace = true;
        const auto result = contraction_retract(d, f0, options);
        for (std::size_t k = 0; k + 1 < result.trace.size(); ++k) {
            const auto& [f_k, sharp_k] = result.trace[k];
            const auto& [f_next, sharp_next] = result.trace[k + 1];
            for (std::size_t i = 0; i < d.size(); ++i) {
                require(sharp_k[i] <= sharp_next[i] && sharp_next[i] <= f_next[i] &&
                            f_next[i] <= f_k[i],
                        "iterates must keep the sandwich ordering");
            }
        }
        require(result.snapped, "the fixed point must snap to an exact value");
        require(in_td(d, result.point), "the snapped point must lie in the span");
        for (std::size_t i = 0; i < d.size(); ++i) {
            require(result.point[i] <= f0[i], "the snapped point must sit below the start");
        }

        const auto lp_route = retract_to_td(d, f0);
        require(in_td(d, lp_route.function), "the LP retraction lands in the span");
        for (std::size_t i = 0; i < d.size(); ++i) {
            require(lp_route.function[i] <= f0[i], "the LP retraction sits below the start");
        }
    }
}

void criterion_diversity_suite() {
    const auto tripod = tripod_diversity();
    require(is_arboreal(tripod).ok(), "the 4/4/4/5 table is arboreal");
    const auto phylo = is_phylogenetic(tripod);
    require(!phylo.phylogenetic, "the 4/4/4/5 table is not realizable by hull lengths");
    require(phylo.witness_subset.has_value() && *phylo.witness_subset == tripod.full_set(),
            "the witness is the full ground set");
    require(phylo.delta_value == 5 && phylo.hull_value == 6, "witness values are 5 vs 6");
    const auto D = d_delta(tripod);
    require(D.at(D.index_of("{a,b}"), D.index_of("{c}")) == 1,
            "the induced distance between {a,b} and {c} is 1");

    const auto cardinality = cardinality_diversity();
    require(!check_nice(cardinality).equal, "the cardinality table fails the collapse check");
    require(!is_arboreal(cardinality).ok(), "the cardinality table is not arboreal");

    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        require(check_nice(random_diameter(rng, 2 + testing::below(rng, 3))).equal,
                "diameter diversities pass the collapse check");
        require(check_nice(random_l1(rng, 2 + testing::below(rng, 3))).equal,
                "l1 diversities pass the collapse check");
    }

    // Every LP-certified member tested translates into the subset
    // distance span with sup distances preserved.
    const auto check_members = [&](const Diversity& delta,
                                   const std::vector<SubsetFunction>& members) {
        const auto subset_distance = d_delta(delta);
        std::vector<SubsetFunction> translated;
        for (const auto& f : members) {
            require(in_t_delta(delta, f), "member must be LP-certified minimal");
            SubsetFunction g(delta.subset_count());
            for (SubsetMask a = 0; a < delta.subset_count(); ++a) {
                g[a] = f[a] - delta.at(a);
            }
            require(in_td(subset_distance, g), "the translate must land in the span");
            translated.push_back(std::move(g));
        }
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                require(d_inf(members[i], members[j]) == d_inf(translated[i], translated[j]),
                        "sup distances must be preserved by the translation");
            }
        }
    };
    std::vector<SubsetFunction> tripod_members;
    for (const auto& element : tripod.elements()) {
        tripod_members.push_back(g_map(tripod, element));
    }
    check_members(tripod, tripod_members);
    std::vector<SubsetFunction> cardinality_members;
    for (const auto& element : cardinality.elements()) {
        cardinality_members.push_back(g_map(cardinality, element));
    }
    cardinality_members.push_back({r(0), r(1), r(1), r(1), r(1), r(1), r(1), r(2)});
    check_members(cardinality, cardinality_members);
    const auto diameter = random_diameter(rng, 3);
    std::vector<SubsetFunction> diameter_members;
    for (const auto& element : diameter.elements()) {
        diameter_members.push_back(g_map(diameter, element));
    }
    check_members(diameter, diameter_members);
}

void criterion_hull_roundtrip() {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        const auto [ignored, rep] =
            random_subtree_distance(rng(), 2, 3 + testing::below(rng, 10));
        WeightedTree tree = rep.tree;
        const std::size_t count =
            2 + testing::below(rng, std::min<std::size_t>(tree.vertex_count() - 1, 4));
        std::map<std::string, std::string> placement;
        for (std::size_t v = 0; v < count; ++v) {
            const std::string name = "e" + std::to_string(v);
            tree.set_anchor(name, TreePoint::at_vertex(v));
            placement[name] = name;
        }
        const auto delta = phylogenetic_diversity(tree, placement);
        const auto result = is_phylogenetic(delta);
        require(result.phylogenetic, "tree hull diversities must be realizable");
        for (SubsetMask a = 0; a < delta.subset_count(); ++a) {
            if (std::popcount(a) < 2) continue;
            std::vector<std::string> members;
            for (std::size_t i = 0; i < delta.ground_size(); ++i) {
                if (a >> i & 1) members.push_back(delta.elements()[i]);
            }
            require(hull_length(*result.tree, members) == delta.at(a),
                    "hull lengths of the realization must match exactly");
        }
        require(is_arboreal(delta).ok(), "tree hull diversities are arboreal");
    }
}

struct Criterion {
    int number;
    std::string title;
    double budget_seconds;  // 0 = untimed
    std::function<void()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "five-point table: extended condition, exact representation, triangle certificate",
         1.0, criterion_five_point_regression},
        {2, "worked tight spans: three-point families and the octagon's eight extreme points",
         5.0, criterion_example_tight_spans},
        {3, "pinned minimal metric: certificate, non-minimal row, exact retraction", 0.0,
         criterion_pinned_metric_example},
        {4, "gate distances: 50 random spaces exact, 100 sampled pairs never below", 0.0,
         criterion_gate_distance_suite},
        {5, "subtree roundtrip: 200 random instances rebuild and verify", 60.0,
         criterion_subtree_roundtrip},
        {6, "metric equivalence: 200 random metrics agree on both conditions", 0.0,
         criterion_metric_equivalence},
        {7, "contraction: sandwich ordering, exact snap, both retraction routes", 0.0,
         criterion_contraction_suite},
        {8, "diversities: worked examples, collapse checks, translation into the subset span",
         0.0, criterion_diversity_suite},
        {9, "hull roundtrip: 50 random trees realize and stay arboreal", 0.0,
         criterion_hull_roundtrip},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criterion.body();
        } catch (const std::exception& ex) {
            error = ex.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (error.empty() && criterion.budget_seconds > 0 &&
            elapsed > criterion.budget_seconds) {
            std::ostringstream budget;
            budget << "exceeded the " << criterion.budget_seconds << " s budget";
            error = budget.str();
        }
        std::printf("[%s] criterion %d: %s (%.2f s)\n", error.empty() ? "PASS" : "FAIL",
                    criterion.number, criterion.title.c_str(), elapsed);
        if (!error.empty()) {
            std::printf("       %s\n", error.c_str());
            ++failures;
        }
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
