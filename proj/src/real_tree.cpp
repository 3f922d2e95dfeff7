#include "tspan/real_tree.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "tspan/errors.hpp"
#include "tspan/tightspan.hpp"

namespace tspan {

TreePoint TreePoint::at_vertex(std::size_t v) {
    TreePoint p;
    p.vertex = v;
    return p;
}

TreePoint TreePoint::on_edge(std::size_t e, Rational offset) {
    TreePoint p;
    p.edge = e;
    p.offset = std::move(offset);
    return p;
}

WeightedTree::WeightedTree(std::size_t vertex_count, std::vector<TreeEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ == 0) {
        throw ParseError("a tree needs at least one vertex");
    }
    if (edges_.size() + 1 != vertex_count_) {
        throw ParseError("edge count must be vertex count minus one");
    }
    incidence_.assign(vertex_count_, {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const TreeEdge& edge = edges_[e];
        if (edge.u >= vertex_count_ || edge.v >= vertex_count_ || edge.u == edge.v) {
            throw ParseError("edge endpoints out of range");
        }
        if (edge.length <= 0) {
            throw ParseError("edge lengths must be strictly positive");
        }
        incidence_[edge.u].push_back(e);
        incidence_[edge.v].push_back(e);
    }
    // Connectivity (acyclicity follows from the edge count).
    std::vector<bool> seen(vertex_count_, false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!queue.empty()) {
        const std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t e : incidence_[v]) {
            const std::size_t w = edges_[e].u == v ? edges_[e].v : edges_[e].u;
            if (!seen[w]) {
                seen[w] = true;
                ++reached;
                queue.push_back(w);
            }
        }
    }
    if (reached != vertex_count_) {
        throw ParseError("tree is not connected");
    }
}

const std::vector<std::size_t>& WeightedTree::incident_edges(std::size_t v) const {
    return incidence_[v];
}

void WeightedTree::set_anchor(const std::string& name, const TreePoint& point) {
    if (name.empty()) {
        throw ParseError("empty anchor name");
    }
    if (point.is_vertex()) {
        if (point.vertex >= vertex_count_) {
            throw ParseError("anchor vertex out of range");
        }
    } else {
        if (point.edge >= edges_.size()) {
            throw ParseError("anchor edge out of range");
        }
        if (point.offset < 0 || point.offset > edges_[point.edge].length) {
            throw ParseError("anchor offset outside its edge");
        }
    }
    anchors_[name] = point;
}

const TreePoint& WeightedTree::anchor(const std::string& name) const {
    const auto it = anchors_.find(name);
    if (it == anchors_.end()) {
        throw UnknownLabelError("unknown anchor '" + name + "'");
    }
    return it->second;
}

RationalMatrix WeightedTree::vertex_distances() const {
    RationalMatrix dist(vertex_count_, RationalVector(vertex_count_, Rational(0)));
    for (std::size_t source = 0; source < vertex_count_; ++source) {
        std::vector<bool> seen(vertex_count_, false);
        std::deque<std::size_t> queue{source};
        seen[source] = true;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t e : incidence_[v]) {
                const TreeEdge& edge = edges_[e];
                const std::size_t w = edge.u == v ? edge.v : edge.u;
                if (!seen[w]) {
                    seen[w] = true;
                    dist[source][w] = dist[source][v] + edge.length;
                    queue.push_back(w);
                }
            }
        }
    }
    return dist;
}

std::size_t WeightedTree::degree(std::size_t v) const {
    return incidence_[v].size();
}

namespace {

Rational segment_to_segment(const WeightedTree& tree, const RationalMatrix& dist,
                            const TreeSegment& s1, const TreeSegment& s2) {
    if (s1.edge == s2.edge) {
        const Rational low = std::max(s1.from, s2.from);
        const Rational high = std::min(s1.to, s2.to);
        return low <= high ? Rational(0) : Rational(low - high);
    }
    const TreeEdge& e1 = tree.edges()[s1.edge];
    const TreeEdge& e2 = tree.edges()[s2.edge];
    const Rational via_uu = s1.from + dist[e1.u][e2.u] + s2.from;
    const Rational via_uv = s1.from + dist[e1.u][e2.v] + e2.length - s2.to;
    const Rational via_vu = e1.length - s1.to + dist[e1.v][e2.u] + s2.from;
    const Rational via_vv = e1.length - s1.to + dist[e1.v][e2.v] + e2.length - s2.to;
    return std::min({via_uu, via_uv, via_vu, via_vv});
}

// Subtrees reduce to closed segments: a member vertex becomes a
// degenerate segment on any incident edge.
std::vector<TreeSegment> subtree_sites(const WeightedTree& tree, const Subtree& s) {
    std::vector<TreeSegment> sites = s.segments;
    for (std::size_t v : s.vertices) {
        if (tree.edges().empty()) break;
        const std::size_t e = tree.incident_edges(v).front();
        const TreeEdge& edge = tree.edges()[e];
        const Rational at = edge.u == v ? Rational(0) : edge.length;
        sites.push_back({e, at, at});
    }
    return sites;
}

TreePoint segment_point(const WeightedTree& tree, const TreeSegment& s, const Rational& at) {
    const TreeEdge& edge = tree.edges()[s.edge];
    if (at == 0) return TreePoint::at_vertex(edge.u);
    if (at == edge.length) return TreePoint::at_vertex(edge.v);
    return TreePoint::on_edge(s.edge, at);
}

TreeSegment point_site(const WeightedTree& tree, const TreePoint& pt) {
    if (!pt.is_vertex()) return {pt.edge, pt.offset, pt.offset};
    const std::size_t e = tree.incident_edges(pt.vertex).front();
    const TreeEdge& edge = tree.edges()[e];
    const Rational at = edge.u == pt.vertex ? Rational(0) : edge.length;
    return {e, at, at};
}

}  // namespace

Rational tree_distance(const WeightedTree& tree, const TreePoint& p, const TreePoint& q) {
    if (tree.edges().empty()) return Rational(0);
    const RationalMatrix dist = tree.vertex_distances();
    return segment_to_segment(tree, dist, point_site(tree, p), point_site(tree, q));
}

Rational tree_distance(const WeightedTree& tree, const std::string& anchor_p,
                       const std::string& anchor_q) {
    return tree_distance(tree, tree.anchor(anchor_p), tree.anchor(anchor_q));
}

void validate_subtree(const WeightedTree& tree, const Subtree& subtree) {
    if (subtree.vertices.empty() && subtree.segments.empty()) {
        throw InvalidSubtreeError("empty subtree");
    }
    for (std::size_t v : subtree.vertices) {
        if (v >= tree.vertex_count()) {
            throw InvalidSubtreeError("subtree vertex out of range");
        }
    }
    for (const TreeSegment& s : subtree.segments) {
        if (s.edge >= tree.edges().size()) {
            throw InvalidSubtreeError("subtree segment on unknown edge");
        }
        if (s.from < 0 || s.to > tree.edges()[s.edge].length || s.from > s.to) {
            throw InvalidSubtreeError("subtree segment outside its edge");
        }
    }
    // Connectivity: union-find over pieces, joined when they share a
    // point (interval overlap on one edge, or a common endpoint vertex).
    const std::size_t pieces = subtree.vertices.size() + subtree.segments.size();
    std::vector<std::size_t> parent(pieces);
    for (std::size_t i = 0; i < pieces; ++i) parent[i] = i;
    const auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    const auto unite = [&](std::size_t i, std::size_t j) { parent[find(i)] = find(j); };

    const auto touched_vertices = [&](std::size_t piece) -> std::vector<std::size_t> {
        if (piece < subtree.vertices.size()) {
            return {subtree.vertices[piece]};
        }
        const TreeSegment& s = subtree.segments[piece - subtree.vertices.size()];
        const TreeEdge& edge = tree.edges()[s.edge];
        std::vector<std::size_t> touched;
        if (s.from == 0) touched.push_back(edge.u);
        if (s.to == edge.length) touched.push_back(edge.v);
        return touched;
    };

    for (std::size_t i = 0; i < pieces; ++i) {
        const auto ti = touched_vertices(i);
        for (std::size_t j = i + 1; j < pieces; ++j) {
            const auto tj = touched_vertices(j);
            bool joined = false;
            for (std::size_t a : ti) {
                for (std::size_t b : tj) {
                    if (a == b) joined = true;
                }
            }
            if (!joined && i >= subtree.vertices.size() && j >= subtree.vertices.size()) {
                const TreeSegment& si = subtree.segments[i - subtree.vertices.size()];
                const TreeSegment& sj = subtree.segments[j - subtree.vertices.size()];
                if (si.edge == sj.edge && std::max(si.from, sj.from) <= std::min(si.to, sj.to)) {
                    joined = true;
                }
            }
            if (joined) unite(i, j);
        }
    }
    for (std::size_t i = 1; i < pieces; ++i) {
        if (find(i) != find(0)) {
            throw InvalidSubtreeError("subtree is not connected");
        }
    }
}

Rational subtree_distance(const WeightedTree& tree, const Subtree& a, const Subtree& b) {
    validate_subtree(tree, a);
    validate_subtree(tree, b);
    if (tree.edges().empty()) return Rational(0);
    const RationalMatrix dist = tree.vertex_distances();
    const auto sa = subtree_sites(tree, a);
    const auto sb = subtree_sites(tree, b);
    Rational best;
    bool first = true;
    for (const auto& s1 : sa) {
        for (const auto& s2 : sb) {
            const Rational value = segment_to_segment(tree, dist, s1, s2);
            if (first || value < best) {
                best = value;
                first = false;
            }
            if (best == 0) return best;
        }
    }
    return best;
}

std::pair<TreePoint, TreePoint> subtree_nearest_points(const WeightedTree& tree,
                                                       const Subtree& a, const Subtree& b) {
    validate_subtree(tree, a);
    validate_subtree(tree, b);
    if (tree.edges().empty()) {
        return {TreePoint::at_vertex(0), TreePoint::at_vertex(0)};
    }
    const RationalMatrix dist = tree.vertex_distances();
    const auto sa = subtree_sites(tree, a);
    const auto sb = subtree_sites(tree, b);

    Rational best;
    bool first = true;
    TreePoint best_p, best_q;
    for (const auto& s1 : sa) {
        for (const auto& s2 : sb) {
            Rational value;
            TreePoint p, q;
            if (s1.edge == s2.edge) {
                const Rational low = std::max(s1.from, s2.from);
                const Rational high = std::min(s1.to, s2.to);
                if (low <= high) {
                    value = 0;
                    p = q = segment_point(tree, s1, low);
                } else if (s1.to < s2.from) {
                    value = s2.from - s1.to;
                    p = segment_point(tree, s1, s1.to);
                    q = segment_point(tree, s2, s2.from);
                } else {
                    value = s1.from - s2.to;
                    p = segment_point(tree, s1, s1.from);
                    q = segment_point(tree, s2, s2.to);
                }
            } else {
                const TreeEdge& e1 = tree.edges()[s1.edge];
                const TreeEdge& e2 = tree.edges()[s2.edge];
                struct Exit {
                    Rational cost;
                    std::size_t vertex;
                    Rational at;
                };
                const Exit exits1[2] = {{s1.from, e1.u, s1.from},
                                        {e1.length - s1.to, e1.v, s1.to}};
                const Exit exits2[2] = {{s2.from, e2.u, s2.from},
                                        {e2.length - s2.to, e2.v, s2.to}};
                bool inner_first = true;
                for (const auto& x1 : exits1) {
                    for (const auto& x2 : exits2) {
                        const Rational total = x1.cost + dist[x1.vertex][x2.vertex] + x2.cost;
                        if (inner_first || total < value) {
                            value = total;
                            p = segment_point(tree, s1, x1.at);
                            q = segment_point(tree, s2, x2.at);
                            inner_first = false;
                        }
                    }
                }
            }
            if (first || value < best) {
                best = value;
                best_p = p;
                best_q = q;
                first = false;
            }
        }
    }
    return {best_p, best_q};
}

Rational total_length(const WeightedTree& tree) {
    Rational sum(0);
    for (const auto& edge : tree.edges()) sum += edge.length;
    return sum;
}

WeightedTree split_at_points(const WeightedTree& tree, const std::vector<TreePoint>& points,
                             std::vector<std::size_t>& vertex_of) {
    vertex_of.assign(points.size(), tree_npos);
    // Interior offsets per edge, deduplicated and sorted.
    std::map<std::size_t, std::vector<Rational>> cuts;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const TreePoint& p = points[i];
        if (p.is_vertex()) {
            vertex_of[i] = p.vertex;
            continue;
        }
        const TreeEdge& edge = tree.edges()[p.edge];
        if (p.offset == 0) {
            vertex_of[i] = edge.u;
        } else if (p.offset == edge.length) {
            vertex_of[i] = edge.v;
        } else {
            cuts[p.edge].push_back(p.offset);
        }
    }
    for (auto& [e, offsets] : cuts) {
        std::sort(offsets.begin(), offsets.end());
        offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    }

    std::vector<TreeEdge> edges;
    std::size_t next_vertex = tree.vertex_count();
    std::map<std::pair<std::size_t, Rational>, std::size_t> cut_vertex;
    for (std::size_t e = 0; e < tree.edges().size(); ++e) {
        const TreeEdge& edge = tree.edges()[e];
        const auto it = cuts.find(e);
        if (it == cuts.end()) {
            edges.push_back(edge);
            continue;
        }
        std::size_t previous = edge.u;
        Rational at(0);
        for (const Rational& offset : it->second) {
            const std::size_t fresh = next_vertex++;
            cut_vertex[{e, offset}] = fresh;
            edges.push_back({previous, fresh, offset - at});
            previous = fresh;
            at = offset;
        }
        edges.push_back({previous, edge.v, edge.length - at});
    }
    WeightedTree split(next_vertex, std::move(edges));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (vertex_of[i] == tree_npos) {
            vertex_of[i] = cut_vertex.at({points[i].edge, points[i].offset});
        }
    }
    return split;
}

Subtree vertex_hull(const WeightedTree& tree, const std::vector<std::size_t>& vertices) {
    if (vertices.empty()) {
        throw InvalidSubtreeError("hull of an empty vertex set");
    }
    std::set<std::size_t> marked(vertices.begin(), vertices.end());
    Subtree hull;
    std::set<std::size_t> hull_vertices(marked);
    // An edge belongs to the hull iff both of its sides contain marks.
    for (std::size_t e = 0; e < tree.edges().size(); ++e) {
        const TreeEdge& edge = tree.edges()[e];
        std::set<std::size_t> u_side{edge.u};
        std::deque<std::size_t> queue{edge.u};
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t f : tree.incident_edges(v)) {
                if (f == e) continue;
                const TreeEdge& other = tree.edges()[f];
                const std::size_t w = other.u == v ? other.v : other.u;
                if (u_side.insert(w).second) queue.push_back(w);
            }
        }
        std::size_t marks_on_u_side = 0;
        for (std::size_t m : marked) marks_on_u_side += u_side.count(m);
        if (marks_on_u_side > 0 && marks_on_u_side < marked.size()) {
            hull.segments.push_back({e, Rational(0), tree.edges()[e].length});
            hull_vertices.insert(edge.u);
            hull_vertices.insert(edge.v);
        }
    }
    hull.vertices.assign(hull_vertices.begin(), hull_vertices.end());
    return hull;
}

Rational hull_length_at(const WeightedTree& tree, const std::vector<TreePoint>& points) {
    if (points.size() < 2) return Rational(0);
    std::vector<std::size_t> vertex_of;
    const WeightedTree split = split_at_points(tree, points, vertex_of);
    const Subtree hull = vertex_hull(split, vertex_of);
    Rational sum(0);
    for (const auto& segment : hull.segments) {
        sum += segment.to - segment.from;
    }
    return sum;
}

Rational hull_length(const WeightedTree& tree, const std::vector<std::string>& anchors) {
    std::vector<TreePoint> points;
    points.reserve(anchors.size());
    for (const auto& name : anchors) points.push_back(tree.anchor(name));
    return hull_length_at(tree, points);
}

// ---------------------------------------------------------------------------
// Additive reconstruction

namespace {

// Mutable tree under construction; every anchored location is kept as a
// vertex so paths can be walked exactly.
class TreeAssembler {
  public:
    TreeAssembler() { adjacency_.emplace_back(); }

    std::size_t add_vertex() {
        adjacency_.emplace_back();
        return adjacency_.size() - 1;
    }

    void add_edge(std::size_t u, std::size_t v, const Rational& length) {
        const std::size_t e = lengths_.size();
        lengths_.push_back(length);
        ends_.emplace_back(u, v);
        adjacency_[u].push_back(e);
        adjacency_[v].push_back(e);
    }

    // Vertex at `offset` along the path from a toward b, splitting an
    // edge when the location is interior.
    std::size_t materialize(std::size_t a, std::size_t b, const Rational& offset) {
        if (offset == 0) return a;
        const auto path = edge_path(a, b);
        Rational walked(0);
        std::size_t at = a;
        for (std::size_t e : path) {
            const std::size_t next = other_end(e, at);
            const Rational len = lengths_[e];
            if (walked + len < offset) {
                walked += len;
                at = next;
                continue;
            }
            if (walked + len == offset) return next;
            return split_edge(e, at, offset - walked);
        }
        throw VerificationError("path shorter than the requested offset");
    }

    WeightedTree freeze() const {
        std::vector<TreeEdge> edges;
        edges.reserve(lengths_.size());
        for (std::size_t e = 0; e < lengths_.size(); ++e) {
            edges.push_back({ends_[e].first, ends_[e].second, lengths_[e]});
        }
        return WeightedTree(adjacency_.size(), std::move(edges));
    }

  private:
    std::size_t other_end(std::size_t e, std::size_t v) const {
        return ends_[e].first == v ? ends_[e].second : ends_[e].first;
    }

    std::vector<std::size_t> edge_path(std::size_t a, std::size_t b) const {
        std::vector<std::size_t> parent_edge(adjacency_.size(), tree_npos);
        std::vector<std::size_t> parent(adjacency_.size(), tree_npos);
        std::deque<std::size_t> queue{a};
        std::vector<bool> seen(adjacency_.size(), false);
        seen[a] = true;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            if (v == b) break;
            for (std::size_t e : adjacency_[v]) {
                const std::size_t w = other_end(e, v);
                if (!seen[w]) {
                    seen[w] = true;
                    parent[w] = v;
                    parent_edge[w] = e;
                    queue.push_back(w);
                }
            }
        }
        std::vector<std::size_t> path;
        for (std::size_t v = b; v != a; v = parent[v]) {
            path.push_back(parent_edge[v]);
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    // Splits edge e at `offset` from endpoint `from`; both pieces keep
    // strictly positive length.
    std::size_t split_edge(std::size_t e, std::size_t from, const Rational& offset) {
        const std::size_t to = other_end(e, from);
        const Rational remainder = lengths_[e] - offset;
        const std::size_t mid = add_vertex();
        auto& adj_to = adjacency_[to];
        adj_to.erase(std::find(adj_to.begin(), adj_to.end(), e));
        ends_[e] = {from, mid};
        lengths_[e] = offset;
        adjacency_[mid].push_back(e);
        add_edge(mid, to, remainder);
        return mid;
    }

    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<Rational> lengths_;
    std::vector<std::pair<std::size_t, std::size_t>> ends_;
};

}  // namespace

WeightedTree additive_tree_reconstruction(const Metric& rho) {
    const DistanceSpace& space = rho.space();
    const std::size_t n = space.size();
    TreeAssembler assembler;
    std::vector<std::size_t> anchor_vertex(n, 0);

    for (std::size_t k = 1; k < n; ++k) {
        const Rational& to_ref = rho.at(0, k);
        if (to_ref == 0) {
            anchor_vertex[k] = anchor_vertex[0];
            continue;
        }
        // Gromov products against the reference label locate the deepest
        // divergence point, where the new pendant attaches.
        Rational best(0);
        std::size_t toward = 0;
        for (std::size_t j = 1; j < k; ++j) {
            const Rational product = (to_ref + rho.at(0, j) - rho.at(j, k)) / 2;
            if (product > best) {
                best = product;
                toward = j;
            }
        }
        const std::size_t attach =
            assembler.materialize(anchor_vertex[0], anchor_vertex[toward], best);
        const Rational pendant = to_ref - best;
        if (pendant < 0) {
            throw NotAdditiveError("negative pendant length while inserting '" +
                                   space.label(k) + "'");
        }
        if (pendant == 0) {
            anchor_vertex[k] = attach;
        } else {
            const std::size_t leaf = assembler.add_vertex();
            assembler.add_edge(attach, leaf, pendant);
            anchor_vertex[k] = leaf;
        }
    }

    WeightedTree tree = assembler.freeze();
    for (std::size_t i = 0; i < n; ++i) {
        tree.set_anchor(space.label(i), TreePoint::at_vertex(anchor_vertex[i]));
    }
    // Realization check: the anchor metric must reproduce rho exactly.
    const RationalMatrix dist = tree.vertex_distances();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist[anchor_vertex[i]][anchor_vertex[j]] != rho.at(i, j)) {
                throw NotAdditiveError("metric is not additive: pair (" + space.label(i) +
                                       ", " + space.label(j) + ") is not realized");
            }
        }
    }
    return tree;
}

// ---------------------------------------------------------------------------
// Subtree representations

Certificate verify_subtree_representation(const SubtreeRepresentation& rep,
                                          const DistanceSpace& d) {
    for (const auto& label : d.labels()) {
        if (rep.subtrees.find(label) == rep.subtrees.end()) {
            throw UnknownLabelError("representation has no subtree for '" + label + "'");
        }
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            const Rational value = subtree_distance(rep.tree, rep.subtrees.at(d.label(i)),
                                                    rep.subtrees.at(d.label(j)));
            if (value != d.at(i, j)) {
                return {CertificateKind::SubtreeMismatch,
                        {d.label(i), d.label(j)},
                        value,
                        d.at(i, j)};
            }
        }
    }
    return {};
}

SubtreeRepresentation build_subtree_representation(const DistanceSpace& d) {
    const Certificate certificate = check_extended_four_point(d);
    if (!certificate.ok()) {
        throw PreconditionError("no subtree representation: " + to_string(certificate));
    }

    if (d.is_null()) {
        // The tight span is a single point; every subtree is that point.
        WeightedTree tree(1, {});
        SubtreeRepresentation rep{std::move(tree), {}};
        for (const auto& label : d.labels()) {
            rep.tree.set_anchor(label, TreePoint::at_vertex(0));
            rep.subtrees[label] = Subtree{{0}, {}};
        }
        return rep;
    }

    const std::size_t n = d.size();
    // Geodesic gate points of every positive pair, deduplicated.
    std::vector<PointFunction> gates;
    std::vector<std::vector<std::size_t>> gates_of_label(n);
    const auto intern = [&](const PointFunction& f) -> std::size_t {
        for (std::size_t g = 0; g < gates.size(); ++g) {
            if (gates[g] == f) return g;
        }
        gates.push_back(f);
        return gates.size() - 1;
    };
    std::vector<bool> null_row(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (d.at(i, j) != 0) null_row[i] = false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d.at(i, j) == 0) {
                // Labels at distance zero with positive rows still need
                // a shared point: gate hulls alone may sit apart, so a
                // common point of the two gate sets joins them.
                if (!null_row[i] && !null_row[j]) {
                    const auto link = kappa_common_point(d, d.label(i), d.label(j));
                    const std::size_t id = intern(link.function);
                    gates_of_label[i].push_back(id);
                    gates_of_label[j].push_back(id);
                }
                continue;
            }
            const auto toward_j = geodesic_point(d, d.label(i), d.label(j), Rational(0));
            const auto toward_i = geodesic_point(d, d.label(i), d.label(j), d.at(i, j));
            gates_of_label[i].push_back(intern(toward_j.function));
            gates_of_label[j].push_back(intern(toward_i.function));
        }
    }

    // Under the sup metric the gates satisfy the classical four-point
    // condition, so they span a tree exactly.
    const std::size_t g = gates.size();
    RationalMatrix table(g, RationalVector(g, Rational(0)));
    for (std::size_t a = 0; a < g; ++a) {
        for (std::size_t b = a + 1; b < g; ++b) {
            table[a][b] = table[b][a] = d_inf_by_formula(d, gates[a], gates[b]);
        }
    }
    std::vector<std::string> gate_labels(g);
    for (std::size_t a = 0; a < g; ++a) {
        gate_labels[a] = "g" + std::to_string(a);
    }
    WeightedTree tree =
        additive_tree_reconstruction(Metric(DistanceSpace(gate_labels, std::move(table))));

    SubtreeRepresentation rep{std::move(tree), {}};
    for (std::size_t i = 0; i < n; ++i) {
        if (gates_of_label[i].empty()) {
            // d(x, .) == 0: kappa(x) is the whole tree.
            Subtree whole;
            for (std::size_t v = 0; v < rep.tree.vertex_count(); ++v) {
                whole.vertices.push_back(v);
            }
            for (std::size_t e = 0; e < rep.tree.edges().size(); ++e) {
                whole.segments.push_back({e, Rational(0), rep.tree.edges()[e].length});
            }
            rep.subtrees[d.label(i)] = std::move(whole);
            continue;
        }
        std::vector<std::size_t> anchor_vertices;
        for (std::size_t gate : gates_of_label[i]) {
            const TreePoint& point = rep.tree.anchor(gate_labels[gate]);
            anchor_vertices.push_back(point.vertex);
        }
        rep.subtrees[d.label(i)] = vertex_hull(rep.tree, anchor_vertices);
    }

    const Certificate verdict = verify_subtree_representation(rep, d);
    if (!verdict.ok()) {
        throw VerificationError("subtree representation failed self-verification: " +
                                to_string(verdict));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Random instances

namespace {

std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;  // deterministic across platforms, bias immaterial here
}

Rational random_length(std::mt19937_64& rng) {
    const unsigned numerator = 1 + static_cast<unsigned>(next_below(rng, 8));
    const unsigned denominator = 1 + static_cast<unsigned>(next_below(rng, 2));
    return Rational(numerator) / Rational(denominator);
}

}  // namespace

std::pair<DistanceSpace, SubtreeRepresentation> random_subtree_distance(
    std::uint64_t seed, std::size_t n_points, std::size_t tree_size) {
    if (n_points == 0 || tree_size == 0) {
        throw PreconditionError("generator sizes must be positive");
    }
    std::mt19937_64 rng(seed);

    std::vector<TreeEdge> edges;
    for (std::size_t v = 1; v <= tree_size; ++v) {
        const std::size_t parent = next_below(rng, v);
        edges.push_back({parent, v, random_length(rng)});
    }
    WeightedTree tree(tree_size + 1, std::move(edges));

    SubtreeRepresentation rep{std::move(tree), {}};
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < n_points; ++p) {
        const std::string label = "x" + std::to_string(p);
        labels.push_back(label);

        // Random connected vertex set grown along tree adjacency.
        std::set<std::size_t> chosen{next_below(rng, rep.tree.vertex_count())};
        const std::size_t target = 1 + next_below(rng, 4);
        while (chosen.size() < target) {
            std::vector<std::size_t> frontier;
            for (std::size_t v : chosen) {
                for (std::size_t e : rep.tree.incident_edges(v)) {
                    const TreeEdge& edge = rep.tree.edges()[e];
                    const std::size_t w = edge.u == v ? edge.v : edge.u;
                    if (chosen.count(w) == 0) frontier.push_back(w);
                }
            }
            if (frontier.empty()) break;
            chosen.insert(frontier[next_below(rng, frontier.size())]);
        }

        Subtree subtree;
        subtree.vertices.assign(chosen.begin(), chosen.end());
        for (std::size_t e = 0; e < rep.tree.edges().size(); ++e) {
            const TreeEdge& edge = rep.tree.edges()[e];
            if (chosen.count(edge.u) > 0 && chosen.count(edge.v) > 0) {
                subtree.segments.push_back({e, Rational(0), edge.length});
            }
        }
        rep.subtrees[label] = std::move(subtree);
    }

    RationalMatrix table(n_points, RationalVector(n_points, Rational(0)));
    for (std::size_t i = 0; i < n_points; ++i) {
        for (std::size_t j = i + 1; j < n_points; ++j) {
            table[i][j] = table[j][i] = subtree_distance(rep.tree, rep.subtrees.at(labels[i]),
                                                         rep.subtrees.at(labels[j]));
        }
    }
    return {DistanceSpace(labels, std::move(table)), std::move(rep)};
}

}  // namespace tspan
