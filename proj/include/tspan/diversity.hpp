#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tspan/distance_space.hpp"
#include "tspan/rational.hpp"
#include "tspan/real_tree.hpp"

namespace tspan {

/// Subsets of the ground set as bitmasks over the element order.
using SubsetMask = std::uint32_t;

/// A value for every subset of the ground set, indexed by mask.
using SubsetFunction = RationalVector;

/// Exact-valued function on all subsets of a finite ground set
/// satisfying the diversity axioms: zero exactly on subsets of size
/// <= 1 and the triangle inequality through non-empty pivots.
class Diversity {
  public:
    static constexpr std::size_t default_element_cap = 5;

    Diversity(std::vector<std::string> elements, SubsetFunction table,
              std::size_t element_cap = default_element_cap);

    std::size_t ground_size() const { return elements_.size(); }
    std::size_t subset_count() const { return table_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }
    const SubsetFunction& table() const { return table_; }
    const Rational& at(SubsetMask subset) const { return table_[subset]; }
    SubsetMask full_set() const { return static_cast<SubsetMask>(table_.size() - 1); }

    std::string subset_label(SubsetMask subset) const;
    SubsetMask subset_of_elements(const std::vector<std::string>& members) const;

  private:
    std::vector<std::string> elements_;
    SubsetFunction table_;
};

/// ok, or the first axiom violation in scan order (zero/sign failures
/// first, then the triangle axiom over (A, B, C) with B non-empty).
Certificate check_diversity_axioms(const std::vector<std::string>& elements,
                                   const SubsetFunction& table);

/// Largest pairwise distance per subset.  Requires a separated metric.
Diversity diameter_diversity(const Metric& rho);

/// Sum of coordinate ranges per subset, over labeled points "p0",
/// "p1", ... in the given order.  Points must be distinct.
Diversity l1_diversity(const std::vector<RationalVector>& points);

/// Subset hull lengths in a tree: delta(A) is the length of the
/// smallest connected subset containing A's placements.
Diversity phylogenetic_diversity(const WeightedTree& tree,
                                 const std::map<std::string, std::string>& placement);

/// The induced distance on all subsets:
/// D(A,B) = max(delta(A u B) - delta(A) - delta(B), 0), with subsets
/// labeled "{a,b,...}" in mask order.
DistanceSpace d_delta(const Diversity& delta);

/// All collections of non-empty subsets of an n-set in which every
/// member keeps an element private from the union of the others.  The
/// dropped (redundant) collections are dominated once f >= delta >= 0,
/// so this family generates the same polyhedron.
std::vector<std::vector<SubsetMask>> irredundant_collections(std::size_t n);

bool in_p_delta(const Diversity& delta, const SubsetFunction& f);
bool in_p2(const Diversity& delta, const SubsetFunction& f);

/// H-representations over one variable per non-empty subset (the empty
/// set's zero value is substituted away): the full irredundant
/// collection family, or only its pairwise relaxation.
Polyhedron p_delta_polyhedron(const Diversity& delta);
Polyhedron p2_polyhedron(const Diversity& delta);

/// Minimality certificates by LP: minimal iff no dominated distinct
/// member of the corresponding P-set has a smaller coordinate sum.
bool in_t_delta(const Diversity& delta, const SubsetFunction& f);
bool in_t2(const Diversity& delta, const SubsetFunction& f);

/// g_x(A) = delta(A u {x}); always a member of T_delta.
SubsetFunction g_map(const Diversity& delta, const std::string& element);

/// Induced diversity on tight-span members:
/// max over irredundant collections of delta(union) - sum of pointwise
/// minima; zero for fewer than two functions' worth of spread.
Rational delta_t(const Diversity& delta, const std::vector<SubsetFunction>& family);

/// f - delta, a member of the tight span of (subsets, D_delta); the
/// membership is asserted, not assumed.
SubsetFunction embed_into_td(const Diversity& delta, const SubsetFunction& f);

struct NiceResult {
    bool equal = false;
    /// A generator of the pairwise-relaxed polyhedron violating a
    /// collection constraint, when unequal.
    std::optional<SubsetFunction> witness;
};

/// Decides whether the collection polyhedron coincides with its
/// pairwise relaxation by enumerating the relaxation's vertices and
/// extreme rays and testing them against the collection constraints.
NiceResult check_nice(const Diversity& delta);

/// The tight span of the diversity is a real tree iff the induced
/// subset distance satisfies the extended four-point condition.
Certificate is_arboreal(const Diversity& delta);

/// {x : delta(A u {x}) <= delta(A)}; always contains A.
SubsetMask b_set(const Diversity& delta, SubsetMask a);

struct PhylogeneticResult {
    bool phylogenetic = false;
    std::optional<WeightedTree> tree;  // exact realization on success
    std::optional<Certificate> metric_witness;
    std::optional<SubsetMask> witness_subset;
    Rational delta_value;
    Rational hull_value;
};

/// Exact decision: the induced pair metric must be additive and the
/// realizing tree's hull lengths must reproduce every subset value.
PhylogeneticResult is_phylogenetic(const Diversity& delta);

}  // namespace tspan
