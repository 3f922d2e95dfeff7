#pragma once

#include <string>

#include <json.hpp>

#include "tspan/distance_space.hpp"
#include "tspan/diversity.hpp"
#include "tspan/rational.hpp"
#include "tspan/real_tree.hpp"
#include "tspan/tightspan.hpp"

namespace tspan {

using Json = nlohmann::ordered_json;

/// Accepts JSON integers and "p/q" strings; floats are rejected
/// (exactness is the product).
Rational rational_from_json(const Json& value);

/// Integers that fit in 64 bits stay JSON numbers; everything else is
/// a "p/q" string.
Json rational_to_json(const Rational& value);

/// {"labels": [...], "matrix": [[...]]}.
DistanceSpace distance_space_from_json(const Json& value);
Json distance_space_to_json(const DistanceSpace& d);

/// Whitespace format: a header row of labels, then the square matrix.
DistanceSpace distance_space_from_text(const std::string& text);

/// Sniffs JSON ('{' first) vs whitespace matrix.
DistanceSpace load_distance_space(const std::string& path);

Json point_function_to_json(const DistanceSpace& d, const PointFunction& f);
/// Comma-separated rationals in label order, e.g. "0,3,1".
PointFunction point_function_from_text(const DistanceSpace& d, const std::string& text);

Json certificate_to_json(const Certificate& certificate);

Json tree_to_json(const WeightedTree& tree);
WeightedTree tree_from_json(const Json& value);

Json subtree_representation_to_json(const SubtreeRepresentation& rep);
SubtreeRepresentation subtree_representation_from_json(const Json& value);

/// {"elements": [...], "delta": {"a": 0, "a,b": "4", ...}} with subset
/// keys as comma-joined labels in element order; the empty-set entry is
/// optional and forced to zero.
Diversity diversity_from_json(const Json& value,
                              std::size_t element_cap = Diversity::default_element_cap);
Json diversity_to_json(const Diversity& delta);
Diversity load_diversity(const std::string& path,
                         std::size_t element_cap = Diversity::default_element_cap);

Json subset_function_to_json(const Diversity& delta, const SubsetFunction& f);

/// Newick rendering with anchor names as vertex labels; only trees
/// whose subtrees are plain vertex sets display faithfully.
std::string tree_to_newick(const WeightedTree& tree);

std::string read_file(const std::string& path);
Json parse_json_file(const std::string& path);

}  // namespace tspan
