#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tspan/distance_space.hpp"
#include "tspan/rational.hpp"

namespace tspan {

inline constexpr std::size_t tree_npos = static_cast<std::size_t>(-1);

struct TreeEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    Rational length;  // strictly positive
};

/// A location in a tree: either a vertex or an interior point of an
/// edge at `offset` from the edge's u endpoint.
struct TreePoint {
    std::size_t vertex = tree_npos;
    std::size_t edge = tree_npos;
    Rational offset;

    static TreePoint at_vertex(std::size_t v);
    static TreePoint on_edge(std::size_t e, Rational offset);
    bool is_vertex() const { return vertex != tree_npos; }

    bool operator==(const TreePoint& other) const = default;
};

/// Closed sub-interval [from, to] of an edge, measured from the edge's
/// u endpoint.  A whole edge is the segment [0, length].
struct TreeSegment {
    std::size_t edge = 0;
    Rational from;
    Rational to;
};

/// Closed connected union of vertices and edge segments.
struct Subtree {
    std::vector<std::size_t> vertices;
    std::vector<TreeSegment> segments;
};

/// Finite edge-weighted tree (connected, acyclic, positive lengths)
/// with named anchor points.
class WeightedTree {
  public:
    WeightedTree(std::size_t vertex_count, std::vector<TreeEdge> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    const std::vector<TreeEdge>& edges() const { return edges_; }
    const std::vector<std::size_t>& incident_edges(std::size_t v) const;
    const std::map<std::string, TreePoint>& anchors() const { return anchors_; }

    void set_anchor(const std::string& name, const TreePoint& point);
    const TreePoint& anchor(const std::string& name) const;

    /// Exact all-pairs vertex distances.
    RationalMatrix vertex_distances() const;

    std::size_t degree(std::size_t v) const;

  private:
    std::size_t vertex_count_;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<std::size_t>> incidence_;
    std::map<std::string, TreePoint> anchors_;
};

/// Exact path length between two anchored locations.
Rational tree_distance(const WeightedTree& tree, const TreePoint& p, const TreePoint& q);
Rational tree_distance(const WeightedTree& tree, const std::string& anchor_p,
                       const std::string& anchor_q);

/// Throws InvalidSubtreeError unless the subtree is a non-empty closed
/// connected subset of the tree.
void validate_subtree(const WeightedTree& tree, const Subtree& subtree);

/// Exact minimum path length between two closed subtrees (0 when they
/// intersect).
Rational subtree_distance(const WeightedTree& tree, const Subtree& a, const Subtree& b);

/// A closest pair of points, one in each subtree.
std::pair<TreePoint, TreePoint> subtree_nearest_points(const WeightedTree& tree,
                                                       const Subtree& a, const Subtree& b);

Rational total_length(const WeightedTree& tree);

/// Summed length of the union of pairwise paths among the named
/// anchors; 0 for fewer than two anchors.
Rational hull_length(const WeightedTree& tree, const std::vector<std::string>& anchors);
Rational hull_length_at(const WeightedTree& tree, const std::vector<TreePoint>& points);

/// Copy of `tree` with every listed point materialized as a vertex;
/// `vertex_of` receives the vertex id of each input point.
WeightedTree split_at_points(const WeightedTree& tree, const std::vector<TreePoint>& points,
                             std::vector<std::size_t>& vertex_of);

/// Minimal connected subtree spanning the given vertices (whole edges
/// plus their endpoints).
Subtree vertex_hull(const WeightedTree& tree, const std::vector<std::size_t>& vertices);

/// Exact realization of a four-point metric as an edge-weighted tree
/// with one anchor per label.  Steiner vertices have degree >= 3 and
/// labels at distance zero share an anchor.  Throws NotAdditiveError
/// when the metric is not additive.
WeightedTree additive_tree_reconstruction(const Metric& rho);

struct SubtreeRepresentation {
    WeightedTree tree;
    std::map<std::string, Subtree> subtrees;
};

/// Tree and subtree family realizing d through minimum subtree
/// distances, built from the tight span's geodesic gate points.
/// Requires the extended four-point condition; the result is
/// self-verified before being returned.
SubtreeRepresentation build_subtree_representation(const DistanceSpace& d);

/// ok iff every pairwise subtree distance reproduces d exactly;
/// otherwise the first mismatching pair with both values.
Certificate verify_subtree_representation(const SubtreeRepresentation& rep,
                                          const DistanceSpace& d);

/// Deterministic generator: a random edge-weighted tree with random
/// connected subtrees, returned together with the distance they induce.
std::pair<DistanceSpace, SubtreeRepresentation> random_subtree_distance(
    std::uint64_t seed, std::size_t n_points, std::size_t tree_size);

}  // namespace tspan
