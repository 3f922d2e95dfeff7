#include <doctest.h>

#include <bit>

#include "oracles.hpp"
#include "tspan/diversity.hpp"
#include "tspan/errors.hpp"
#include "tspan/polyhedron.hpp"
#include "tspan/tightspan.hpp"

using namespace tspan;

namespace {

const auto r = [](int v) { return Rational(v); };

// Pairs at 4, triple at 5: tree-like but not realizable by hull lengths.
Diversity tripod_diversity() {
    SubsetFunction table(8, Rational(0));
    table[0b011] = table[0b101] = table[0b110] = Rational(4);
    table[0b111] = Rational(5);
    return Diversity({"a", "b", "c"}, std::move(table));
}

// delta(A) = |A| - 1 on three elements.
Diversity cardinality_diversity() {
    SubsetFunction table(8, Rational(0));
    for (SubsetMask a = 1; a < 8; ++a) table[a] = Rational(std::popcount(a) - 1);
    return Diversity({"x", "y", "z"}, std::move(table));
}

Metric line_metric() {
    // Points at 0, 1, 3 on the line.
    return Metric(DistanceSpace(
        {"p0", "p1", "p3"},
        {{r(0), r(1), r(3)}, {r(1), r(0), r(2)}, {r(3), r(2), r(0)}}));
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

WeightedTree star_tree() {
    WeightedTree tree(4, {{0, 1, Rational(2)}, {0, 2, Rational(2)}, {0, 3, Rational(2)}});
    tree.set_anchor("a", TreePoint::at_vertex(1));
    tree.set_anchor("b", TreePoint::at_vertex(2));
    tree.set_anchor("c", TreePoint::at_vertex(3));
    return tree;
}

}  // namespace

TEST_CASE("axiom checker accepts the examples and flags singleton mass") {
    CHECK(check_diversity_axioms(tripod_diversity().elements(),
                                 tripod_diversity().table())
              .ok());
    CHECK(check_diversity_axioms(cardinality_diversity().elements(),
                                 cardinality_diversity().table())
              .ok());

    SubsetFunction bad(4, Rational(0));
    bad[0b01] = Rational(1);  // a singleton with nonzero value
    const auto certificate = check_diversity_axioms({"a", "b"}, bad);
    CHECK(certificate.kind == CertificateKind::DiversityAxiomViolation);
    CHECK(certificate.witness == std::vector<std::string>{"{a}"});

    SubsetFunction skewed(8, Rational(0));
    skewed[0b011] = Rational(9);
    skewed[0b101] = Rational(1);
    skewed[0b110] = Rational(1);
    skewed[0b111] = Rational(9);
    const auto triangle = check_diversity_axioms({"a", "b", "c"}, skewed);
    CHECK(triangle.kind == CertificateKind::DiversityAxiomViolation);
    CHECK(triangle.witness.size() == 3);
}

TEST_CASE("diameter diversity tables") {
    RationalMatrix ones(3, RationalVector(3, Rational(1)));
    for (int i = 0; i < 3; ++i) ones[i][i] = 0;
    const auto equilateral = diameter_diversity(Metric(DistanceSpace({"a", "b", "c"}, ones)));
    CHECK(equilateral.at(0b011) == 1);
    CHECK(equilateral.at(0b111) == 1);

    const auto line = diameter_diversity(line_metric());
    CHECK(line.at(0b111) == 3);
    CHECK(line.at(0b011) == 1);

    const auto two = diameter_diversity(Metric(DistanceSpace(
        {"a", "b"}, {{r(0), r(7)}, {r(7), r(0)}})));
    CHECK(two.at(0b11) == 7);

    RationalMatrix merged(2, RationalVector(2, Rational(0)));
    CHECK_THROWS_AS(diameter_diversity(Metric(DistanceSpace({"a", "b"}, merged))),
                    PreconditionError);
}

TEST_CASE("l1 diversity sums coordinate ranges") {
    const std::vector<RationalVector> square = {
        {r(0), r(0)}, {r(1), r(0)}, {r(0), r(1)}, {r(1), r(1)}};
    const auto delta = l1_diversity(square);
    CHECK(delta.at(0b1111) == 2);
    CHECK(delta.at(0b0011) == 1);   // two adjacent corners
    CHECK(delta.at(0b1001) == 2);   // diagonal pair
    CHECK(delta.at(0b0001) == 0);

    CHECK_THROWS_AS(l1_diversity({{r(0)}, {r(0)}}), PreconditionError);
    CHECK_THROWS_AS(l1_diversity({{r(0)}, {r(0), r(1)}}), DimensionMismatchError);
}

TEST_CASE("tree hull diversity on a star and a path") {
    const auto delta = phylogenetic_diversity(
        star_tree(), {{"a", "a"}, {"b", "b"}, {"c", "c"}});
    CHECK(delta.at(0b011) == 4);
    CHECK(delta.at(0b101) == 4);
    CHECK(delta.at(0b110) == 4);
    CHECK(delta.at(0b111) == 6);

    // On a path, hull length equals the diameter.
    WeightedTree path(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}});
    path.set_anchor("p0", TreePoint::at_vertex(0));
    path.set_anchor("p1", TreePoint::at_vertex(1));
    path.set_anchor("p3", TreePoint::at_vertex(2));
    const auto from_path = phylogenetic_diversity(
        path, {{"p0", "p0"}, {"p1", "p1"}, {"p3", "p3"}});
    const auto from_diameter = diameter_diversity(line_metric());
    CHECK(from_path.table() == from_diameter.table());
}

TEST_CASE("induced subset distance") {
    const auto delta = cardinality_diversity();
    const auto D = d_delta(delta);
    const auto at = [&](const std::string& a, const std::string& b) {
        return D.at(D.index_of(a), D.index_of(b));
    };
    CHECK(at("{x}", "{y}") == 1);
    CHECK(at("{x,y}", "{y,z}") == 0);
    CHECK(at("{}", "{x,y,z}") == 0);

    const auto tripod = tripod_diversity();
    const auto DT = d_delta(tripod);
    CHECK(DT.at(DT.index_of("{a,b}"), DT.index_of("{c}")) == 1);
    // Rows of the empty and the full set vanish identically.
    for (std::size_t j = 0; j < DT.size(); ++j) {
        CHECK(DT.at(0, j) == 0);
        CHECK(DT.at(DT.size() - 1, j) == 0);
    }
}

TEST_CASE("irredundant collections carry private elements") {
    const auto collections = irredundant_collections(3);
    // Every singleton collection appears.
    std::size_t singletons = 0;
    for (const auto& c : collections) {
        if (c.size() == 1) ++singletons;
        CHECK(c.size() <= 3);
        for (std::size_t i = 0; i < c.size(); ++i) {
            SubsetMask others = 0;
            for (std::size_t j = 0; j < c.size(); ++j) {
                if (j != i) others |= c[j];
            }
            CHECK((c[i] & ~others) != 0);
        }
    }
    CHECK(singletons == 7);
}

TEST_CASE("membership in the collection and pairwise polyhedra") {
    RationalMatrix ones(3, RationalVector(3, Rational(1)));
    for (int i = 0; i < 3; ++i) ones[i][i] = 0;
    const auto delta = diameter_diversity(Metric(DistanceSpace({"a", "b", "c"}, ones)));

    // The diversity itself fails even the pairwise conditions: singleton
    // values vanish while pairs are positive.
    CHECK_FALSE(in_p2(delta, delta.table()));
    CHECK_FALSE(in_p_delta(delta, delta.table()));

    // A large constant is comfortably inside.
    SubsetFunction constant(8, delta.at(0b111));
    constant[0] = 0;
    CHECK(in_p_delta(delta, constant));
    CHECK(in_p2(delta, constant));

    // Gate functions are members of the tight span.
    for (const auto& element : delta.elements()) {
        CHECK(in_p_delta(delta, g_map(delta, element)));
    }
}

TEST_CASE("minimality certificates by LP") {
    const auto tripod = tripod_diversity();
    for (const auto& element : tripod.elements()) {
        CHECK(in_t_delta(tripod, g_map(tripod, element)));
        CHECK(in_t2(tripod, g_map(tripod, element)));
    }

    // A uniform lift of the cardinality diversity stays feasible but is
    // reducible everywhere.
    const auto cardinality = cardinality_diversity();
    SubsetFunction inflated = cardinality.table();
    for (SubsetMask a = 1; a < 8; ++a) inflated[a] += 1;
    REQUIRE(in_p_delta(cardinality, inflated));
    CHECK_FALSE(in_t_delta(cardinality, inflated));

    CHECK_THROWS_AS(in_t_delta(tripod, tripod.table()), PreconditionError);
}

TEST_CASE("gate function values") {
    const auto delta = cardinality_diversity();
    const auto gx = g_map(delta, "x");
    CHECK(gx[0] == 0);            // empty set
    CHECK(gx[0b001] == 0);        // {x}
    CHECK(gx[0b010] == 1);        // {y}
    CHECK(gx[0b110] == 2);        // {y,z}

    const auto tripod = tripod_diversity();
    CHECK(g_map(tripod, "a")[0b110] == 5);  // {b,c} united with a

    CHECK_THROWS_AS(g_map(delta, "nope"), UnknownLabelError);
}

TEST_CASE("induced tight-span diversity restricts to the original") {
    for (const auto& delta : {tripod_diversity(), cardinality_diversity()}) {
        std::vector<SubsetFunction> gates;
        for (const auto& element : delta.elements()) {
            gates.push_back(g_map(delta, element));
        }
        for (SubsetMask c = 0; c < 8; ++c) {
            std::vector<SubsetFunction> family;
            for (std::size_t i = 0; i < 3; ++i) {
                if (c >> i & 1) family.push_back(gates[i]);
            }
            CHECK(delta_t(delta, family) == delta.at(c));
        }
        // Pairs reproduce the sup distance.
        CHECK(delta_t(delta, {gates[0], gates[1]}) == d_inf(gates[0], gates[1]));
    }
}

TEST_CASE("translates of tight-span members live in the subset-distance span") {
    const auto delta = tripod_diversity();
    const auto D = d_delta(delta);
    std::vector<SubsetFunction> translated;
    for (const auto& element : delta.elements()) {
        const auto f = g_map(delta, element);
        const auto g = embed_into_td(delta, f);
        translated.push_back(g);
        CHECK(in_td(D, g));
        // (g_x - delta)({x}) = 0.
        CHECK(g[delta.subset_of_elements({element})] == 0);
    }
    // Pairwise sup distances are preserved under the translation.
    for (std::size_t i = 0; i < translated.size(); ++i) {
        for (std::size_t j = i + 1; j < translated.size(); ++j) {
            CHECK(d_inf(translated[i], translated[j]) ==
                  d_inf(g_map(delta, delta.elements()[i]), g_map(delta, delta.elements()[j])));
        }
    }
}

TEST_CASE("bi-pyramid region of the cardinality diversity") {
    const auto delta = cardinality_diversity();
    const auto D = d_delta(delta);
    const auto vertices = tight_span_vertices(D);
    CHECK(vertices.size() == 5);
    for (const auto& vertex : vertices) {
        CHECK(in_td(D, vertex));
    }
    // The translated gates are among the extreme points (the base of
    // the bi-pyramid).
    for (const auto& element : delta.elements()) {
        const auto g = embed_into_td(delta, g_map(delta, element));
        CHECK(std::count(vertices.begin(), vertices.end(), g) == 1);
    }
    // The second apex of the bi-pyramid is the all-halves point; it has
    // no preimage in the smaller region (the two spans are not in
    // bijection).
    const SubsetFunction apex = {r(0),          Rational(1) / 2, Rational(1) / 2,
                                 Rational(1) / 2, Rational(1) / 2, Rational(1) / 2,
                                 Rational(1) / 2, r(0)};
    CHECK(std::count(vertices.begin(), vertices.end(), apex) == 1);
    SubsetFunction lifted = apex;
    for (SubsetMask a = 0; a < 8; ++a) lifted[a] += delta.at(a);
    CHECK_FALSE(in_p_delta(delta, lifted));
}

TEST_CASE("pyramid region of the cardinality diversity") {
    // Extreme points of the collection polyhedron that are minimal:
    // the three gates plus one apex.
    const auto delta = cardinality_diversity();
    const auto poly_vertices = enumerate_vertices(p_delta_polyhedron(delta));
    std::vector<SubsetFunction> minimal;
    for (const auto& vertex : poly_vertices) {
        SubsetFunction f(8, Rational(0));
        for (SubsetMask a = 1; a < 8; ++a) f[a] = vertex[std::size_t(a) - 1];
        if (in_t_delta(delta, f)) minimal.push_back(f);
    }
    CHECK(minimal.size() == 4);
    for (const auto& element : delta.elements()) {
        CHECK(std::count(minimal.begin(), minimal.end(), g_map(delta, element)) == 1);
    }
    // The apex: ones on singletons and pairs, two on the full set; it
    // sits at sup-distance one from every gate.
    const SubsetFunction apex = {r(0), r(1), r(1), r(1), r(1), r(1), r(1), r(2)};
    CHECK(std::count(minimal.begin(), minimal.end(), apex) == 1);
    for (const auto& element : delta.elements()) {
        CHECK(d_inf(apex, g_map(delta, element)) == 1);
    }
    // Its translate lands inside the bi-pyramid.
    CHECK(in_td(d_delta(delta), embed_into_td(delta, apex)));
}

TEST_CASE("pairwise relaxation collapses for diameter and l1 but not cardinality") {
    std::mt19937_64 rng(127);
    for (int trial = 0; trial < 4; ++trial) {
        CHECK(check_nice(random_diameter(rng, 2 + testing::below(rng, 3))).equal);
        CHECK(check_nice(random_l1(rng, 2 + testing::below(rng, 3))).equal);
    }

    const auto nice = check_nice(cardinality_diversity());
    CHECK_FALSE(nice.equal);
    REQUIRE(nice.witness.has_value());
    // The witness satisfies the pairwise conditions but breaks a
    // collection constraint.
    CHECK(in_p2(cardinality_diversity(), *nice.witness));
    CHECK_FALSE(in_p_delta(cardinality_diversity(), *nice.witness));
}

TEST_CASE("diameter diversities satisfy the pair-bound inequality behind the collapse") {
    std::mt19937_64 rng(131);
    for (int trial = 0; trial < 6; ++trial) {
        const auto delta = random_diameter(rng, 3 + testing::below(rng, 2));
        for (const auto& collection : irredundant_collections(delta.ground_size())) {
            if (collection.size() < 3) continue;
            SubsetMask all = 0;
            Rational best(0);
            for (SubsetMask m : collection) all |= m;
            for (std::size_t i = 0; i < collection.size(); ++i) {
                for (std::size_t j = i + 1; j < collection.size(); ++j) {
                    best = std::max(best, delta.at(collection[i] | collection[j]));
                }
            }
            CHECK(delta.at(all) <= best);
        }
    }
}

TEST_CASE("arboreality of the worked examples") {
    CHECK(is_arboreal(tripod_diversity()).ok());

    const auto violation = is_arboreal(cardinality_diversity());
    CHECK(violation.kind == CertificateKind::ExtFourPointViolation);
    CHECK(recheck_certificate(d_delta(cardinality_diversity()), violation));
}

TEST_CASE("tree hull diversities are arboreal") {
    std::mt19937_64 rng(137);
    for (int trial = 0; trial < 6; ++trial) {
        const auto [d, rep] = random_subtree_distance(rng(), 2, 3 + testing::below(rng, 8));
        // Use up to four tree vertices as placements.
        const std::size_t count = std::min<std::size_t>(rep.tree.vertex_count(), 4);
        std::map<std::string, std::string> placement;
        WeightedTree tree = rep.tree;
        bool distinct = true;
        for (std::size_t v = 0; v < count; ++v) {
            tree.set_anchor("e" + std::to_string(v), TreePoint::at_vertex(v));
            placement["e" + std::to_string(v)] = "e" + std::to_string(v);
        }
        if (!distinct) continue;
        const auto delta = phylogenetic_diversity(tree, placement);
        CHECK(is_arboreal(delta).ok());
        const auto result = is_phylogenetic(delta);
        CHECK(result.phylogenetic);
    }
}

TEST_CASE("B-sets collect the elements that do not grow a subset") {
    const auto line = diameter_diversity(line_metric());
    // A = {p0, p3} spans the diameter; the middle point joins for free.
    const SubsetMask a = line.subset_of_elements({"p0", "p3"});
    CHECK(b_set(line, a) == line.full_set());

    CHECK(b_set(line, line.full_set()) == line.full_set());

    const auto tripod = tripod_diversity();
    const SubsetMask ab = tripod.subset_of_elements({"a", "b"});
    CHECK(b_set(tripod, ab) == ab);  // c would raise the value to 5

    CHECK_THROWS_AS(b_set(tripod, 0), PreconditionError);
}

TEST_CASE("hull-length realizability of the worked examples") {
    const auto tripod = tripod_diversity();
    const auto result = is_phylogenetic(tripod);
    CHECK_FALSE(result.phylogenetic);
    REQUIRE(result.witness_subset.has_value());
    CHECK(*result.witness_subset == tripod.full_set());
    CHECK(result.delta_value == 5);
    CHECK(result.hull_value == 6);

    const auto from_star = phylogenetic_diversity(
        star_tree(), {{"a", "a"}, {"b", "b"}, {"c", "c"}});
    const auto roundtrip = is_phylogenetic(from_star);
    CHECK(roundtrip.phylogenetic);
    REQUIRE(roundtrip.tree.has_value());
    CHECK(total_length(*roundtrip.tree) == 6);

    // Diameter of a line realizes on a path.
    CHECK(is_phylogenetic(diameter_diversity(line_metric())).phylogenetic);
}

TEST_CASE("hull realizability implies arboreality on random instances") {
    std::mt19937_64 rng(139);
    for (int trial = 0; trial < 8; ++trial) {
        const auto delta = trial % 2 == 0 ? random_diameter(rng, 3) : random_l1(rng, 3);
        if (is_phylogenetic(delta).phylogenetic) {
            CHECK(is_arboreal(delta).ok());
        }
    }
}

TEST_CASE("derived monotonicity holds for all constructors") {
    std::mt19937_64 rng(149);
    const auto check_monotone = [](const Diversity& delta) {
        for (SubsetMask a = 0; a < delta.subset_count(); ++a) {
            for (std::size_t i = 0; i < delta.ground_size(); ++i) {
                const SubsetMask bigger = a | (SubsetMask(1) << i);
                CHECK(delta.at(a) <= delta.at(bigger));
            }
        }
    };
    check_monotone(random_diameter(rng, 4));
    check_monotone(random_l1(rng, 4));
    check_monotone(tripod_diversity());
}

TEST_CASE("subset-distance span of the tripod diversity is a tree") {
    // The induced subset distance has a representation whose subtrees
    // for {a,b} and {c} sit at distance one.
    const auto tripod = tripod_diversity();
    const auto D = d_delta(tripod);
    const auto rep = build_subtree_representation(D);
    CHECK(verify_subtree_representation(rep, D).ok());
    CHECK(subtree_distance(rep.tree, rep.subtrees.at("{a,b}"), rep.subtrees.at("{c}")) == 1);
}
