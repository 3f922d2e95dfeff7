#include "tspan/diversity.hpp"

#include <algorithm>
#include <bit>

#include "tspan/errors.hpp"
#include "tspan/linear_program.hpp"
#include "tspan/polyhedron.hpp"
#include "tspan/tightspan.hpp"

namespace tspan {

namespace {

std::string subset_label_of(const std::vector<std::string>& elements, SubsetMask subset) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if ((subset >> i & 1) == 0) continue;
        if (!first) out += ",";
        out += elements[i];
        first = false;
    }
    out += "}";
    return out;
}

void require_table_size(const std::vector<std::string>& elements, const SubsetFunction& table) {
    if (table.size() != (std::size_t(1) << elements.size())) {
        throw ParseError("diversity table must cover all subsets");
    }
}

}  // namespace

Diversity::Diversity(std::vector<std::string> elements, SubsetFunction table,
                     std::size_t element_cap)
    : elements_(std::move(elements)), table_(std::move(table)) {
    if (elements_.empty()) {
        throw ParseError("a diversity needs at least one element");
    }
    if (elements_.size() > element_cap) {
        throw SizeCapError("ground set exceeds the configured cap of " +
                           std::to_string(element_cap) + " elements");
    }
    const Certificate certificate = check_diversity_axioms(elements_, table_);
    if (!certificate.ok()) {
        throw PreconditionError("not a diversity: " + to_string(certificate));
    }
}

std::string Diversity::subset_label(SubsetMask subset) const {
    return subset_label_of(elements_, subset);
}

SubsetMask Diversity::subset_of_elements(const std::vector<std::string>& members) const {
    SubsetMask subset = 0;
    for (const auto& member : members) {
        const auto it = std::find(elements_.begin(), elements_.end(), member);
        if (it == elements_.end()) {
            throw UnknownLabelError("unknown element '" + member + "'");
        }
        subset |= SubsetMask(1) << (it - elements_.begin());
    }
    return subset;
}

Certificate check_diversity_axioms(const std::vector<std::string>& elements,
                                   const SubsetFunction& table) {
    require_table_size(elements, table);
    const std::size_t subsets = table.size();
    for (SubsetMask a = 0; a < subsets; ++a) {
        const int size = std::popcount(a);
        if (size <= 1 && table[a] != 0) {
            return {CertificateKind::DiversityAxiomViolation,
                    {subset_label_of(elements, a)},
                    table[a],
                    Rational(0)};
        }
        if (size > 1 && table[a] <= 0) {
            // delta vanishes exactly on subsets of size <= 1.
            return {CertificateKind::DiversityAxiomViolation,
                    {subset_label_of(elements, a)},
                    Rational(0),
                    table[a]};
        }
    }
    for (SubsetMask a = 0; a < subsets; ++a) {
        for (SubsetMask b = 1; b < subsets; ++b) {
            for (SubsetMask c = 0; c < subsets; ++c) {
                const Rational& lhs = table[a | c];
                const Rational rhs = table[a | b] + table[b | c];
                if (lhs > rhs) {
                    return {CertificateKind::DiversityAxiomViolation,
                            {subset_label_of(elements, a), subset_label_of(elements, b),
                             subset_label_of(elements, c)},
                            lhs,
                            rhs};
                }
            }
        }
    }
    return {};
}

Diversity diameter_diversity(const Metric& rho) {
    const DistanceSpace& space = rho.space();
    const std::size_t n = space.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rho.at(i, j) == 0) {
                throw PreconditionError("diameter diversity needs a separated metric");
            }
        }
    }
    SubsetFunction table(std::size_t(1) << n, Rational(0));
    for (SubsetMask a = 0; a < table.size(); ++a) {
        Rational best(0);
        for (std::size_t i = 0; i < n; ++i) {
            if ((a >> i & 1) == 0) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if ((a >> j & 1) == 0) continue;
                best = std::max(best, rho.at(i, j));
            }
        }
        table[a] = best;
    }
    return Diversity(space.labels(), std::move(table));
}

Diversity l1_diversity(const std::vector<RationalVector>& points) {
    if (points.empty()) {
        throw ParseError("need at least one point");
    }
    const std::size_t dim = points[0].size();
    for (const auto& p : points) {
        if (p.size() != dim) {
            throw DimensionMismatchError("points of different dimension");
        }
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i] == points[j]) {
                throw PreconditionError("points must be distinct");
            }
        }
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels.push_back("p" + std::to_string(i));
    }
    SubsetFunction table(std::size_t(1) << points.size(), Rational(0));
    for (SubsetMask a = 0; a < table.size(); ++a) {
        if (std::popcount(a) < 2) continue;
        Rational sum(0);
        for (std::size_t axis = 0; axis < dim; ++axis) {
            bool first = true;
            Rational low, high;
            for (std::size_t i = 0; i < points.size(); ++i) {
                if ((a >> i & 1) == 0) continue;
                const Rational& value = points[i][axis];
                if (first) {
                    low = high = value;
                    first = false;
                } else {
                    low = std::min(low, value);
                    high = std::max(high, value);
                }
            }
            sum += high - low;
        }
        table[a] = sum;
    }
    return Diversity(labels, std::move(table));
}

Diversity phylogenetic_diversity(const WeightedTree& tree,
                                 const std::map<std::string, std::string>& placement) {
    if (placement.empty()) {
        throw ParseError("need at least one placed label");
    }
    std::vector<std::string> labels;
    std::vector<TreePoint> points;
    for (const auto& [label, anchor_name] : placement) {
        labels.push_back(label);
        points.push_back(tree.anchor(anchor_name));
    }
    SubsetFunction table(std::size_t(1) << labels.size(), Rational(0));
    for (SubsetMask a = 0; a < table.size(); ++a) {
        if (std::popcount(a) < 2) continue;
        std::vector<TreePoint> members;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (a >> i & 1) members.push_back(points[i]);
        }
        table[a] = hull_length_at(tree, members);
    }
    return Diversity(labels, std::move(table));
}

DistanceSpace d_delta(const Diversity& delta) {
    const std::size_t subsets = delta.subset_count();
    std::vector<std::string> labels(subsets);
    for (SubsetMask a = 0; a < subsets; ++a) {
        labels[a] = delta.subset_label(a);
    }
    RationalMatrix table(subsets, RationalVector(subsets, Rational(0)));
    for (SubsetMask a = 0; a < subsets; ++a) {
        for (SubsetMask b = a + 1; b < subsets; ++b) {
            const Rational value = delta.at(a | b) - delta.at(a) - delta.at(b);
            table[a][b] = table[b][a] = std::max(Rational(0), value);
        }
    }
    return DistanceSpace(labels, std::move(table));
}

std::vector<std::vector<SubsetMask>> irredundant_collections(std::size_t n) {
    const SubsetMask limit = static_cast<SubsetMask>((std::size_t(1) << n) - 1);
    std::vector<std::vector<SubsetMask>> collections;
    std::vector<SubsetMask> current;

    const auto every_member_private = [&](SubsetMask candidate) {
        // The candidate and all current members must each keep a bit
        // outside the union of the rest.
        for (std::size_t i = 0; i < current.size(); ++i) {
            SubsetMask others = candidate;
            for (std::size_t j = 0; j < current.size(); ++j) {
                if (j != i) others |= current[j];
            }
            if ((current[i] & ~others) == 0) return false;
        }
        SubsetMask others = 0;
        for (SubsetMask m : current) others |= m;
        return (candidate & ~others) != 0;
    };

    const auto recurse = [&](auto&& self, SubsetMask from) -> void {
        for (SubsetMask m = from; m <= limit; ++m) {
            if (current.size() >= n) break;  // members need distinct private bits
            if (!every_member_private(m)) continue;
            current.push_back(m);
            collections.push_back(current);
            self(self, m + 1);
            current.pop_back();
        }
    };
    recurse(recurse, 1);
    return collections;
}

namespace {

void require_subset_function(const Diversity& delta, const SubsetFunction& f) {
    if (f.size() != delta.subset_count()) {
        throw DimensionMismatchError("subset function must cover all subsets");
    }
}

SubsetMask union_of(const std::vector<SubsetMask>& collection) {
    SubsetMask u = 0;
    for (SubsetMask m : collection) u |= m;
    return u;
}

// Shared constraint family for the T_delta / T_2 minimality LPs: one
// variable per non-empty subset.
Polyhedron build_polyhedron(const Diversity& delta, bool pairwise_only) {
    const std::size_t subsets = delta.subset_count();
    const std::size_t vars = subsets - 1;  // f(empty) = 0 eliminated
    Polyhedron poly;
    poly.variable_count = vars;
    const auto var_of = [](SubsetMask a) { return std::size_t(a) - 1; };

    if (pairwise_only) {
        for (SubsetMask a = 1; a < subsets; ++a) {
            LinearConstraint lower;
            lower.coefficients.assign(vars, Rational(0));
            lower.coefficients[var_of(a)] = 1;
            lower.rhs = delta.at(a);
            poly.constraints.push_back(std::move(lower));
            for (SubsetMask b = a + 1; b < subsets; ++b) {
                LinearConstraint pair;
                pair.coefficients.assign(vars, Rational(0));
                pair.coefficients[var_of(a)] += 1;
                pair.coefficients[var_of(b)] += 1;
                pair.rhs = delta.at(a | b);
                poly.constraints.push_back(std::move(pair));
            }
        }
        return poly;
    }

    for (const auto& collection : irredundant_collections(delta.ground_size())) {
        LinearConstraint c;
        c.coefficients.assign(vars, Rational(0));
        for (SubsetMask m : collection) c.coefficients[var_of(m)] += 1;
        c.rhs = delta.at(union_of(collection));
        poly.constraints.push_back(std::move(c));
    }
    return poly;
}

bool minimal_in(const Diversity& delta, const SubsetFunction& f, bool pairwise_only) {
    require_subset_function(delta, f);
    const bool member = pairwise_only ? in_p2(delta, f) : in_p_delta(delta, f);
    if (!member) {
        throw PreconditionError("function lies outside the corresponding P-set");
    }
    const std::size_t vars = delta.subset_count() - 1;
    Polyhedron poly = build_polyhedron(delta, pairwise_only);
    Rational total(0);
    for (SubsetMask a = 1; a < delta.subset_count(); ++a) {
        LinearConstraint upper;
        upper.coefficients.assign(vars, Rational(0));
        upper.coefficients[a - 1] = -1;
        upper.rhs = -f[a];
        poly.constraints.push_back(std::move(upper));
        total += f[a];
    }
    const LpResult result = minimize_over(poly, RationalVector(vars, Rational(1)));
    if (result.status != LpStatus::Optimal) {
        throw VerificationError("minimality LP did not reach an optimum");
    }
    return result.value == total;
}

}  // namespace

bool in_p_delta(const Diversity& delta, const SubsetFunction& f) {
    require_subset_function(delta, f);
    if (f[0] != 0) return false;
    for (const auto& collection : irredundant_collections(delta.ground_size())) {
        Rational sum(0);
        for (SubsetMask m : collection) sum += f[m];
        if (sum < delta.at(union_of(collection))) return false;
    }
    return true;
}

bool in_p2(const Diversity& delta, const SubsetFunction& f) {
    require_subset_function(delta, f);
    if (f[0] != 0) return false;
    const std::size_t subsets = delta.subset_count();
    for (SubsetMask a = 1; a < subsets; ++a) {
        if (f[a] < delta.at(a)) return false;
        for (SubsetMask b = a; b < subsets; ++b) {
            if (f[a] + f[b] < delta.at(a | b)) return false;
        }
    }
    return true;
}

Polyhedron p_delta_polyhedron(const Diversity& delta) {
    return build_polyhedron(delta, false);
}

Polyhedron p2_polyhedron(const Diversity& delta) {
    return build_polyhedron(delta, true);
}

bool in_t_delta(const Diversity& delta, const SubsetFunction& f) {
    return minimal_in(delta, f, false);
}

bool in_t2(const Diversity& delta, const SubsetFunction& f) {
    return minimal_in(delta, f, true);
}

SubsetFunction g_map(const Diversity& delta, const std::string& element) {
    const SubsetMask x = delta.subset_of_elements({element});
    SubsetFunction g(delta.subset_count());
    for (SubsetMask a = 0; a < delta.subset_count(); ++a) {
        g[a] = delta.at(a | x);
    }
    return g;
}

Rational delta_t(const Diversity& delta, const std::vector<SubsetFunction>& family) {
    if (family.empty()) return Rational(0);
    for (const auto& f : family) {
        if (!in_t_delta(delta, f)) {
            throw PreconditionError("family member lies outside T_delta");
        }
    }
    Rational best(0);  // the empty collection contributes 0
    for (const auto& collection : irredundant_collections(delta.ground_size())) {
        Rational sum = delta.at(union_of(collection));
        for (SubsetMask m : collection) {
            Rational lowest = family[0][m];
            for (const auto& f : family) lowest = std::min(lowest, f[m]);
            sum -= lowest;
        }
        best = std::max(best, sum);
    }
    return best;
}

SubsetFunction embed_into_td(const Diversity& delta, const SubsetFunction& f) {
    if (!in_t_delta(delta, f)) {
        throw PreconditionError("embedding requires a member of T_delta");
    }
    SubsetFunction g(delta.subset_count());
    for (SubsetMask a = 0; a < delta.subset_count(); ++a) {
        g[a] = f[a] - delta.at(a);
    }
    if (!in_td(d_delta(delta), g)) {
        throw VerificationError("translate fell outside the subset-distance tight span");
    }
    return g;
}

NiceResult check_nice(const Diversity& delta) {
    const auto generators = enumerate_generators(p2_polyhedron(delta));
    const auto collections = irredundant_collections(delta.ground_size());

    const auto violates = [&](const RationalVector& point, bool is_ray) {
        for (const auto& collection : collections) {
            Rational sum(0);
            for (SubsetMask m : collection) sum += point[std::size_t(m) - 1];
            const Rational bound = is_ray ? Rational(0) : delta.at(union_of(collection));
            if (sum < bound) return true;
        }
        return false;
    };

    for (const auto& vertex : generators.vertices) {
        if (violates(vertex, false)) {
            SubsetFunction witness(delta.subset_count(), Rational(0));
            for (SubsetMask a = 1; a < delta.subset_count(); ++a) {
                witness[a] = vertex[std::size_t(a) - 1];
            }
            return {false, std::move(witness)};
        }
    }
    for (const auto& ray : generators.rays) {
        if (violates(ray, true)) {
            SubsetFunction witness(delta.subset_count(), Rational(0));
            for (SubsetMask a = 1; a < delta.subset_count(); ++a) {
                witness[a] = ray[std::size_t(a) - 1];
            }
            return {false, std::move(witness)};
        }
    }
    return {true, std::nullopt};
}

Certificate is_arboreal(const Diversity& delta) {
    return check_extended_four_point(d_delta(delta));
}

SubsetMask b_set(const Diversity& delta, SubsetMask a) {
    if (a == 0) {
        throw PreconditionError("B-set of the empty subset");
    }
    if (a > delta.full_set()) {
        throw UnknownLabelError("subset mask out of range");
    }
    SubsetMask result = 0;
    for (std::size_t i = 0; i < delta.ground_size(); ++i) {
        const SubsetMask x = SubsetMask(1) << i;
        if (delta.at(a | x) <= delta.at(a)) result |= x;
    }
    return result;
}

PhylogeneticResult is_phylogenetic(const Diversity& delta) {
    const std::size_t n = delta.ground_size();
    PhylogeneticResult result;

    RationalMatrix pair_table(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const SubsetMask pair = (SubsetMask(1) << i) | (SubsetMask(1) << j);
            pair_table[i][j] = pair_table[j][i] = delta.at(pair);
        }
    }
    const DistanceSpace induced(delta.elements(), std::move(pair_table));
    const Certificate four_point = check_four_point(induced);
    if (!four_point.ok()) {
        result.metric_witness = four_point;
        return result;
    }

    WeightedTree tree = additive_tree_reconstruction(Metric(induced));
    for (SubsetMask a = 0; a <= delta.full_set(); ++a) {
        if (std::popcount(a) < 2) continue;
        std::vector<std::string> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (a >> i & 1) members.push_back(delta.elements()[i]);
        }
        const Rational hull = hull_length(tree, members);
        if (hull != delta.at(a)) {
            result.witness_subset = a;
            result.delta_value = delta.at(a);
            result.hull_value = hull;
            return result;
        }
    }
    result.phylogenetic = true;
    result.tree = std::move(tree);
    return result;
}

}  // namespace tspan
