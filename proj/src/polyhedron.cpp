#include "tspan/polyhedron.hpp"

#include <algorithm>
#include <cstdint>

#include "tspan/errors.hpp"
#include "tspan/linalg.hpp"

namespace tspan {

namespace {

// A ray of the homogenized cone plus the bitset of constraint rows it
// satisfies with equality.  Tight sets drive the combinatorial
// adjacency test, so they are maintained incrementally.
struct Ray {
    RationalVector direction;
    std::vector<std::uint64_t> tight;
};

void set_bit(std::vector<std::uint64_t>& bits, std::size_t i) {
    bits[i / 64] |= std::uint64_t(1) << (i % 64);
}

bool is_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if ((a[i] & ~b[i]) != 0) return false;
    }
    return true;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
    Rational sum(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != 0 && b[i] != 0) sum += a[i] * b[i];
    }
    return sum;
}

// Scale to the unique primitive integer representative of the ray.
void canonicalize(RationalVector& v) {
    Integer scale(1);
    for (const auto& x : v) {
        if (x != 0) scale = lcm(scale, denominator(x));
    }
    Integer common(0);
    for (auto& x : v) {
        x *= scale;
        common = gcd(common, numerator(x));
    }
    if (common > 1) {
        for (auto& x : v) x /= Rational(common);
    }
}

// Homogenized rows: a.x >= b becomes (a, -b).y >= 0, equalities give two
// rows, and t >= 0 closes the cone.
std::vector<RationalVector> homogenized_rows(const Polyhedron& poly) {
    const std::size_t dim = poly.variable_count + 1;
    std::vector<RationalVector> rows;
    for (const auto& c : poly.constraints) {
        if (c.coefficients.size() != poly.variable_count) {
            throw DimensionMismatchError("constraint arity does not match variable count");
        }
        RationalVector row(dim);
        for (std::size_t j = 0; j < poly.variable_count; ++j) row[j] = c.coefficients[j];
        row[dim - 1] = -c.rhs;
        rows.push_back(row);
        if (c.relation == Relation::Equal) {
            RationalVector negated(dim);
            for (std::size_t j = 0; j < dim; ++j) negated[j] = -row[j];
            rows.push_back(negated);
        }
    }
    RationalVector t_row(dim);
    t_row[dim - 1] = 1;
    rows.push_back(t_row);
    return rows;
}

}  // namespace

GeneratorSet enumerate_generators(const Polyhedron& poly,
                                  const DoubleDescriptionOptions& options) {
    const std::size_t dim = poly.variable_count + 1;
    const auto rows = homogenized_rows(poly);
    const std::size_t words = (rows.size() + 63) / 64;

    // A polyhedron has vertices iff the homogenized cone is pointed,
    // i.e. the constraint normals span the full space.
    const auto basis_rows = independent_rows(rows);
    if (basis_rows.size() < dim) {
        return {.vertices = {}, .rays = {}, .has_vertices = false};
    }

    RationalMatrix basis(dim);
    for (std::size_t i = 0; i < dim; ++i) basis[i] = rows[basis_rows[i]];
    const auto inverse = invert_matrix(basis);

    // Initial simplicial cone from the basis rows: generator j is the
    // j-th column of the inverse, tight on every basis row except j.
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        Ray ray;
        ray.direction.resize(dim);
        for (std::size_t i = 0; i < dim; ++i) ray.direction[i] = (*inverse)[i][j];
        canonicalize(ray.direction);
        ray.tight.assign(words, 0);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i != j) set_bit(ray.tight, basis_rows[i]);
        }
        rays.push_back(std::move(ray));
    }

    std::vector<bool> processed(rows.size(), false);
    for (std::size_t i : basis_rows) processed[i] = true;

    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (processed[r]) continue;
        processed[r] = true;

        std::vector<Rational> values(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) {
            values[k] = dot(rows[r], rays[k].direction);
        }

        std::vector<Ray> next;
        std::vector<std::size_t> positive, negative;
        for (std::size_t k = 0; k < rays.size(); ++k) {
            if (values[k] > 0) {
                positive.push_back(k);
                next.push_back(rays[k]);
            } else if (values[k] == 0) {
                Ray kept = rays[k];
                set_bit(kept.tight, r);
                next.push_back(std::move(kept));
            } else {
                negative.push_back(k);
            }
        }

        for (std::size_t p : positive) {
            for (std::size_t q : negative) {
                // Adjacency: no third ray is tight on everything p and q
                // share.  Combined tight set is exact because both sides
                // of the combination are nonnegative on processed rows.
                std::vector<std::uint64_t> common(words);
                for (std::size_t w = 0; w < words; ++w) {
                    common[w] = rays[p].tight[w] & rays[q].tight[w];
                }
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == p || k == q) continue;
                    if (is_subset(common, rays[k].tight)) adjacent = false;
                }
                if (!adjacent) continue;

                Ray combined;
                combined.direction.resize(dim);
                for (std::size_t j = 0; j < dim; ++j) {
                    combined.direction[j] =
                        values[p] * rays[q].direction[j] - values[q] * rays[p].direction[j];
                }
                canonicalize(combined.direction);
                combined.tight = std::move(common);
                set_bit(combined.tight, r);
                next.push_back(std::move(combined));
                if (next.size() > options.max_intermediate_rays) {
                    throw ResourceLimitError("double description exceeded the ray cap");
                }
            }
        }
        rays = std::move(next);
    }

    GeneratorSet result;
    for (const auto& ray : rays) {
        const Rational& t = ray.direction[dim - 1];
        if (t > 0) {
            RationalVector vertex(poly.variable_count);
            for (std::size_t j = 0; j < poly.variable_count; ++j) {
                vertex[j] = ray.direction[j] / t;
            }
            result.vertices.push_back(std::move(vertex));
        } else {
            RationalVector direction(poly.variable_count);
            for (std::size_t j = 0; j < poly.variable_count; ++j) {
                direction[j] = ray.direction[j];
            }
            result.rays.push_back(std::move(direction));
        }
    }
    std::sort(result.vertices.begin(), result.vertices.end());
    result.vertices.erase(std::unique(result.vertices.begin(), result.vertices.end()),
                          result.vertices.end());
    std::sort(result.rays.begin(), result.rays.end());
    result.rays.erase(std::unique(result.rays.begin(), result.rays.end()),
                      result.rays.end());
    return result;
}

std::vector<RationalVector> enumerate_vertices(const Polyhedron& poly,
                                               const DoubleDescriptionOptions& options) {
    return enumerate_generators(poly, options).vertices;
}

bool contains_point(const Polyhedron& poly, const RationalVector& point) {
    if (point.size() != poly.variable_count) {
        throw DimensionMismatchError("point arity does not match variable count");
    }
    for (const auto& c : poly.constraints) {
        Rational lhs = dot(c.coefficients, point);
        if (c.relation == Relation::Equal ? lhs != c.rhs : lhs < c.rhs) {
            return false;
        }
    }
    return true;
}

}  // namespace tspan
