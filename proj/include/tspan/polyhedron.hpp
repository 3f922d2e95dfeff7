#pragma once

#include <cstddef>
#include <vector>

#include "tspan/linear_program.hpp"
#include "tspan/rational.hpp"

namespace tspan {

/// V-representation produced by the double-description pass.  Rays are
/// directions of the recession cone; a bounded polyhedron has none.
struct GeneratorSet {
    std::vector<RationalVector> vertices;
    std::vector<RationalVector> rays;
    bool has_vertices = true;  // false when the lineality space is nontrivial
};

struct DoubleDescriptionOptions {
    std::size_t max_intermediate_rays = 100000;
};

/// Exact double description on the homogenization of `poly`.  Only
/// meant for desk-scale instances (<= ~16 variables).  Throws
/// ResourceLimitError when the intermediate ray count exceeds the cap.
GeneratorSet enumerate_generators(const Polyhedron& poly,
                                  const DoubleDescriptionOptions& options = {});

/// The 0-dimensional faces of `poly`, sorted lexicographically.  Empty
/// when the polyhedron has no vertices (including the empty polyhedron).
std::vector<RationalVector> enumerate_vertices(
    const Polyhedron& poly, const DoubleDescriptionOptions& options = {});

/// True iff `point` satisfies every constraint of `poly`.
bool contains_point(const Polyhedron& poly, const RationalVector& point);

}  // namespace tspan
