#include "tspan/json_io.hpp"

#include <fstream>
#include <sstream>

#include "tspan/errors.hpp"

namespace tspan {

Rational rational_from_json(const Json& value) {
    if (value.is_number_integer()) {
        return Rational(Integer(value.get<std::int64_t>()));
    }
    if (value.is_number_unsigned()) {
        return Rational(Integer(value.get<std::uint64_t>()));
    }
    if (value.is_string()) {
        return parse_rational(value.get<std::string>());
    }
    if (value.is_number_float()) {
        throw ParseError("floating-point values are rejected; use integers or \"p/q\" strings");
    }
    throw ParseError("expected an integer or a \"p/q\" string");
}

Json rational_to_json(const Rational& value) {
    if (denominator(value) == 1) {
        const Integer& num = numerator(value);
        if (num >= std::numeric_limits<std::int64_t>::min() &&
            num <= std::numeric_limits<std::int64_t>::max()) {
            return Json(static_cast<std::int64_t>(num));
        }
    }
    return Json(value.str());
}

DistanceSpace distance_space_from_json(const Json& value) {
    if (!value.is_object() || !value.contains("labels") || !value.contains("matrix")) {
        throw ParseError("expected an object with \"labels\" and \"matrix\"");
    }
    std::vector<std::string> labels;
    for (const auto& label : value.at("labels")) {
        if (!label.is_string()) throw ParseError("labels must be strings");
        labels.push_back(label.get<std::string>());
    }
    RationalMatrix table;
    for (const auto& row : value.at("matrix")) {
        RationalVector entries;
        for (const auto& entry : row) {
            entries.push_back(rational_from_json(entry));
        }
        table.push_back(std::move(entries));
    }
    return DistanceSpace(std::move(labels), std::move(table));
}

Json distance_space_to_json(const DistanceSpace& d) {
    Json out;
    out["labels"] = d.labels();
    Json matrix = Json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < d.size(); ++j) {
            row.push_back(rational_to_json(d.at(i, j)));
        }
        matrix.push_back(std::move(row));
    }
    out["matrix"] = std::move(matrix);
    return out;
}

DistanceSpace distance_space_from_text(const std::string& text) {
    std::istringstream input(text);
    std::string header;
    while (std::getline(input, header)) {
        if (header.find_first_not_of(" \t\r") != std::string::npos) break;
    }
    std::istringstream header_stream(header);
    std::vector<std::string> labels;
    std::string token;
    while (header_stream >> token) labels.push_back(token);
    if (labels.empty()) {
        throw ParseError("missing header row of labels");
    }
    RationalMatrix table;
    while (input >> token) {
        if (table.empty() || table.back().size() == labels.size()) {
            table.emplace_back();
        }
        table.back().push_back(parse_rational(token));
    }
    return DistanceSpace(std::move(labels), std::move(table));
}

std::string read_file(const std::string& path) {
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return buffer.str();
}

Json parse_json_file(const std::string& path) {
    const std::string text = read_file(path);
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        throw ParseError("malformed JSON in '" + path + "'");
    }
    return value;
}

DistanceSpace load_distance_space(const std::string& path) {
    const std::string text = read_file(path);
    const auto start = text.find_first_not_of(" \t\r\n");
    if (start != std::string::npos && text[start] == '{') {
        Json value = Json::parse(text, nullptr, false);
        if (value.is_discarded()) {
            throw ParseError("malformed JSON in '" + path + "'");
        }
        return distance_space_from_json(value);
    }
    return distance_space_from_text(text);
}

Json point_function_to_json(const DistanceSpace& d, const PointFunction& f) {
    Json out = Json::object();
    for (std::size_t i = 0; i < d.size() && i < f.size(); ++i) {
        out[d.label(i)] = rational_to_json(f[i]);
    }
    return out;
}

PointFunction point_function_from_text(const DistanceSpace& d, const std::string& text) {
    PointFunction values;
    std::string token;
    std::istringstream input(text);
    while (std::getline(input, token, ',')) {
        const auto begin = token.find_first_not_of(" \t");
        const auto end = token.find_last_not_of(" \t");
        if (begin == std::string::npos) {
            throw ParseError("empty entry in vector '" + text + "'");
        }
        values.push_back(parse_rational(token.substr(begin, end - begin + 1)));
    }
    if (values.size() != d.size()) {
        throw DimensionMismatchError("vector has " + std::to_string(values.size()) +
                                     " entries for " + std::to_string(d.size()) + " points");
    }
    return values;
}

Json certificate_to_json(const Certificate& certificate) {
    Json out;
    out["kind"] = to_string(certificate.kind);
    if (!certificate.ok()) {
        out["witness"] = certificate.witness;
        out["lhs"] = rational_to_json(certificate.lhs);
        out["rhs"] = rational_to_json(certificate.rhs);
    }
    return out;
}

Json tree_to_json(const WeightedTree& tree) {
    Json out;
    Json vertices = Json::array();
    for (std::size_t v = 0; v < tree.vertex_count(); ++v) {
        vertices.push_back(v);
    }
    out["vertices"] = std::move(vertices);
    Json edges = Json::array();
    for (const auto& edge : tree.edges()) {
        Json e;
        e["u"] = edge.u;
        e["v"] = edge.v;
        e["length"] = rational_to_json(edge.length);
        edges.push_back(std::move(e));
    }
    out["edges"] = std::move(edges);
    Json anchors = Json::object();
    for (const auto& [name, point] : tree.anchors()) {
        Json p;
        if (point.is_vertex()) {
            p["vertex"] = point.vertex;
        } else {
            p["edge"] = point.edge;
            p["offset"] = rational_to_json(point.offset);
        }
        anchors[name] = std::move(p);
    }
    out["anchors"] = std::move(anchors);
    return out;
}

WeightedTree tree_from_json(const Json& value) {
    if (!value.is_object() || !value.contains("vertices") || !value.contains("edges")) {
        throw ParseError("expected an object with \"vertices\" and \"edges\"");
    }
    const std::size_t vertex_count = value.at("vertices").size();
    std::vector<TreeEdge> edges;
    for (const auto& e : value.at("edges")) {
        edges.push_back({e.at("u").get<std::size_t>(), e.at("v").get<std::size_t>(),
                         rational_from_json(e.at("length"))});
    }
    WeightedTree tree(vertex_count, std::move(edges));
    if (value.contains("anchors")) {
        for (const auto& [name, p] : value.at("anchors").items()) {
            if (p.contains("vertex")) {
                tree.set_anchor(name, TreePoint::at_vertex(p.at("vertex").get<std::size_t>()));
            } else {
                tree.set_anchor(name, TreePoint::on_edge(p.at("edge").get<std::size_t>(),
                                                         rational_from_json(p.at("offset"))));
            }
        }
    }
    return tree;
}

namespace {

Json subtree_to_json(const Subtree& subtree) {
    Json out;
    out["vertices"] = subtree.vertices;
    Json segments = Json::array();
    for (const auto& segment : subtree.segments) {
        Json s;
        s["edge"] = segment.edge;
        s["from_offset"] = rational_to_json(segment.from);
        s["to_offset"] = rational_to_json(segment.to);
        segments.push_back(std::move(s));
    }
    out["segments"] = std::move(segments);
    return out;
}

Subtree subtree_from_json(const Json& value) {
    Subtree subtree;
    if (value.contains("vertices")) {
        for (const auto& v : value.at("vertices")) {
            subtree.vertices.push_back(v.get<std::size_t>());
        }
    }
    if (value.contains("segments")) {
        for (const auto& s : value.at("segments")) {
            subtree.segments.push_back({s.at("edge").get<std::size_t>(),
                                        rational_from_json(s.at("from_offset")),
                                        rational_from_json(s.at("to_offset"))});
        }
    }
    return subtree;
}

}  // namespace

Json subtree_representation_to_json(const SubtreeRepresentation& rep) {
    Json out = tree_to_json(rep.tree);
    Json subtrees = Json::object();
    for (const auto& [label, subtree] : rep.subtrees) {
        subtrees[label] = subtree_to_json(subtree);
    }
    out["subtrees"] = std::move(subtrees);
    return out;
}

SubtreeRepresentation subtree_representation_from_json(const Json& value) {
    SubtreeRepresentation rep{tree_from_json(value), {}};
    if (value.contains("subtrees")) {
        for (const auto& [label, subtree] : value.at("subtrees").items()) {
            rep.subtrees[label] = subtree_from_json(subtree);
        }
    }
    return rep;
}

Diversity diversity_from_json(const Json& value, std::size_t element_cap) {
    if (!value.is_object() || !value.contains("elements") || !value.contains("delta")) {
        throw ParseError("expected an object with \"elements\" and \"delta\"");
    }
    std::vector<std::string> elements;
    for (const auto& element : value.at("elements")) {
        if (!element.is_string()) throw ParseError("elements must be strings");
        elements.push_back(element.get<std::string>());
    }
    if (elements.empty()) {
        throw ParseError("a diversity needs at least one element");
    }
    if (elements.size() > element_cap) {
        throw SizeCapError("ground set exceeds the configured cap of " +
                           std::to_string(element_cap) + " elements");
    }

    const auto key_of = [&](SubsetMask subset) {
        std::string key;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            if ((subset >> i & 1) == 0) continue;
            if (!key.empty()) key += ",";
            key += elements[i];
        }
        return key;
    };

    const Json& delta = value.at("delta");
    SubsetFunction table(std::size_t(1) << elements.size(), Rational(0));
    std::size_t used = 0;
    for (SubsetMask a = 1; a < table.size(); ++a) {
        const std::string key = key_of(a);
        if (!delta.contains(key)) {
            throw ParseError("incomplete table: missing subset \"" + key + "\"");
        }
        table[a] = rational_from_json(delta.at(key));
        ++used;
    }
    // The empty-set entry is optional and forced to zero.
    const std::size_t extras = delta.size() - used - (delta.contains("") ? 1 : 0);
    if (extras != 0) {
        throw ParseError("table contains keys that name no subset of the elements");
    }
    if (delta.contains("") && rational_from_json(delta.at("")) != 0) {
        throw ParseError("the empty set must have value zero");
    }
    return Diversity(std::move(elements), std::move(table), element_cap);
}

Json diversity_to_json(const Diversity& delta) {
    Json out;
    out["elements"] = delta.elements();
    Json values = Json::object();
    for (SubsetMask a = 1; a < delta.subset_count(); ++a) {
        std::string key;
        for (std::size_t i = 0; i < delta.ground_size(); ++i) {
            if ((a >> i & 1) == 0) continue;
            if (!key.empty()) key += ",";
            key += delta.elements()[i];
        }
        values[key] = rational_to_json(delta.at(a));
    }
    out["delta"] = std::move(values);
    return out;
}

Diversity load_diversity(const std::string& path, std::size_t element_cap) {
    return diversity_from_json(parse_json_file(path), element_cap);
}

Json subset_function_to_json(const Diversity& delta, const SubsetFunction& f) {
    Json out = Json::object();
    for (SubsetMask a = 0; a < f.size() && a < delta.subset_count(); ++a) {
        out[delta.subset_label(a)] = rational_to_json(f[a]);
    }
    return out;
}

namespace {

void newick_visit(const WeightedTree& tree, std::size_t vertex, std::size_t from_edge,
                  const std::map<std::size_t, std::vector<std::string>>& names,
                  std::string& out) {
    std::vector<std::size_t> children;
    for (std::size_t e : tree.incident_edges(vertex)) {
        if (e != from_edge) children.push_back(e);
    }
    if (!children.empty()) {
        out += "(";
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (i > 0) out += ",";
            const TreeEdge& edge = tree.edges()[children[i]];
            const std::size_t child = edge.u == vertex ? edge.v : edge.u;
            newick_visit(tree, child, children[i], names, out);
            out += ":" + edge.length.str();
        }
        out += ")";
    }
    const auto it = names.find(vertex);
    if (it != names.end()) {
        std::string joined;
        for (const auto& name : it->second) {
            if (!joined.empty()) joined += "|";
            joined += name;
        }
        out += joined;
    }
}

}  // namespace

std::string tree_to_newick(const WeightedTree& tree) {
    std::map<std::size_t, std::vector<std::string>> names;
    for (const auto& [name, point] : tree.anchors()) {
        if (point.is_vertex()) names[point.vertex].push_back(name);
    }
    std::string out;
    newick_visit(tree, 0, tree_npos, names, out);
    out += ";";
    return out;
}

}  // namespace tspan
