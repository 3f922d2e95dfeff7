#include "tspan/tightspan.hpp"

#include <algorithm>
#include <map>

#include "tspan/domination.hpp"
#include "tspan/errors.hpp"
#include "tspan/linalg.hpp"
#include "tspan/polyhedron.hpp"

namespace tspan {

namespace {

void require_length(const DistanceSpace& d, const PointFunction& f) {
    if (f.size() != d.size()) {
        throw DimensionMismatchError("point function length does not match the point set");
    }
}

std::vector<std::vector<std::size_t>> argmax_sets(const DistanceSpace& d,
                                                  const PointFunction& f) {
    const std::size_t n = d.size();
    std::vector<std::vector<std::size_t>> sets(n);
    for (std::size_t x = 0; x < n; ++x) {
        Rational best = d.at(x, 0) - f[0];
        sets[x].push_back(0);
        for (std::size_t y = 1; y < n; ++y) {
            Rational value = d.at(x, y) - f[y];
            if (value > best) {
                best = value;
                sets[x].assign(1, y);
            } else if (value == best) {
                sets[x].push_back(y);
            }
        }
    }
    return sets;
}

}  // namespace

bool in_pd(const DistanceSpace& d, const PointFunction& f) {
    require_length(d, f);
    const std::size_t n = d.size();
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x; y < n; ++y) {
            if (f[x] + f[y] < d.at(x, y)) return false;
        }
    }
    return true;
}

PointFunction f_sharp(const DistanceSpace& d, const PointFunction& f) {
    require_length(d, f);
    const std::size_t n = d.size();
    PointFunction sharp(n);
    for (std::size_t x = 0; x < n; ++x) {
        Rational best = d.at(x, 0) - f[0];
        for (std::size_t y = 1; y < n; ++y) {
            best = std::max(best, Rational(d.at(x, y) - f[y]));
        }
        sharp[x] = best;
    }
    return sharp;
}

bool in_td(const DistanceSpace& d, const PointFunction& f) {
    require_length(d, f);
    return f_sharp(d, f) == f;
}

TightSpanPoint make_tight_span_point(const DistanceSpace& d, const PointFunction& f) {
    if (!in_td(d, f)) {
        throw NotInTightSpanError("function is not pointwise-minimal in P_d");
    }
    return {f, argmax_sets(d, f)};
}

Rational d_inf(const PointFunction& f, const PointFunction& g) {
    if (f.size() != g.size()) {
        throw DimensionMismatchError("point functions of different length");
    }
    Rational best(0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        best = std::max(best, Rational(abs(f[i] - g[i])));
    }
    return best;
}

Rational d_inf_by_formula(const DistanceSpace& d, const PointFunction& f,
                          const PointFunction& g) {
    if (!in_td(d, f) || !in_td(d, g)) {
        throw NotInTightSpanError("pair formula requires tight-span points");
    }
    const std::size_t n = d.size();
    Rational best = d.at(0, 0) - f[0] - g[0];
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            best = std::max(best, Rational(d.at(x, y) - f[x] - g[y]));
        }
    }
    return best;
}

TightSpanPoint retract_to_td(const DistanceSpace& d, const PointFunction& f0) {
    require_length(d, f0);
    if (!in_pd(d, f0)) {
        throw NotInPdError("retraction expects a point of P_d");
    }
    const std::size_t n = d.size();
    Polyhedron poly = pd_polyhedron(d);
    for (std::size_t i = 0; i < n; ++i) {
        LinearConstraint upper;
        upper.coefficients.assign(n, Rational(0));
        upper.coefficients[i] = -1;
        upper.rhs = -f0[i];
        poly.constraints.push_back(std::move(upper));
    }
    const LpResult result = minimize_over(poly, RationalVector(n, Rational(1)));
    if (result.status != LpStatus::Optimal) {
        throw VerificationError("retraction LP did not reach an optimum");
    }
    // Any sum-minimum below f0 is pointwise-minimal in P_d: a dominated
    // point would still be feasible with a strictly smaller sum.
    return make_tight_span_point(d, result.point);
}

ContractionOptions::ContractionOptions() : tolerance(pow2_inverse(40)) {}

namespace {

// Exact fixed point induced by a stable argmax pattern.  The base
// equations g(x) + g(a) = d(x,a) for a in S(x) may be underdetermined:
// each bipartite component of the pattern graph leaves one degree of
// freedom.  The midpoint iteration preserves, for every even cycle of
// the chosen-representative map, the alternating sum of the iterate, so
// those sums pin down the limit and are added as extra equations.
struct SnapAttempt {
    bool success = false;
    PointFunction point;
};

SnapAttempt try_snap(const DistanceSpace& d, const PointFunction& current,
                     const std::vector<std::vector<std::size_t>>& pattern) {
    const std::size_t n = d.size();
    RationalMatrix lhs;
    RationalVector rhs;
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t a : pattern[x]) {
            RationalVector row(n, Rational(0));
            row[x] += 1;
            row[a] += 1;
            lhs.push_back(std::move(row));
            rhs.push_back(d.at(x, a));
        }
    }

    auto solved = solve_linear_system(lhs, rhs);
    if (solved.outcome == SolveOutcome::Underdetermined) {
        // Walk the representative map x -> min S(x) to find its cycles.
        std::vector<std::size_t> next(n);
        for (std::size_t x = 0; x < n; ++x) next[x] = pattern[x].front();
        std::vector<int> state(n, 0);
        for (std::size_t start = 0; start < n; ++start) {
            if (state[start] != 0) continue;
            std::vector<std::size_t> path;
            std::size_t v = start;
            while (state[v] == 0) {
                state[v] = 1;
                path.push_back(v);
                v = next[v];
            }
            if (state[v] == 1) {
                // Found a fresh cycle starting at v.
                auto it = std::find(path.begin(), path.end(), v);
                std::vector<std::size_t> cycle(it, path.end());
                if (cycle.size() % 2 == 0) {
                    RationalVector row(n, Rational(0));
                    Rational value(0);
                    Rational sign(1);
                    for (std::size_t u : cycle) {
                        row[u] += sign;
                        value += sign * current[u];
                        sign = -sign;
                    }
                    lhs.push_back(std::move(row));
                    rhs.push_back(value);
                }
            }
            for (std::size_t u : path) state[u] = 2;
        }
        solved = solve_linear_system(lhs, rhs);
    }
    if (solved.outcome != SolveOutcome::Unique) {
        return {};
    }
    const PointFunction& candidate = solved.solution;
    if (!in_pd(d, candidate) || !in_td(d, candidate)) {
        return {};
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (candidate[i] > current[i]) return {};
    }
    return {true, candidate};
}

}  // namespace

ContractionResult contraction_retract(const DistanceSpace& d, const PointFunction& f0,
                                      const ContractionOptions& options) {
    require_length(d, f0);
    if (!in_pd(d, f0)) {
        throw NotInPdError("contraction expects a start point in P_d");
    }
    if (options.tolerance <= 0) {
        throw PreconditionError("tolerance must be positive");
    }

    ContractionResult result;
    PointFunction f = f0;
    PointFunction sharp = f_sharp(d, f);
    if (options.record_trace) result.trace.emplace_back(f, sharp);

    std::vector<std::vector<std::size_t>> previous_pattern;
    for (std::size_t k = 0; k < options.iteration_cap; ++k) {
        if (d_inf(f, sharp) == 0) {
            result.point = f;
            result.snapped = true;
            result.iterations = k;
            return result;
        }
        auto pattern = argmax_sets(d, f);
        if (options.attempt_exact_snap && pattern == previous_pattern) {
            auto snap = try_snap(d, f, pattern);
            if (snap.success) {
                result.point = snap.point;
                result.snapped = true;
                result.iterations = k;
                return result;
            }
        }
        previous_pattern = std::move(pattern);

        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] = (f[i] + sharp[i]) / 2;
        }
        sharp = f_sharp(d, f);
        if (options.record_trace) result.trace.emplace_back(f, sharp);

        const Rational gap = d_inf(f, sharp);
        if (gap <= options.tolerance) {
            result.point = f;
            result.snapped = gap == 0;
            result.iterations = k + 1;
            return result;
        }
    }
    throw IterationCapError("contraction did not converge within the iteration cap");
}

PointFunction contraction_retract(const DistanceSpace& d, const PointFunction& f0,
                                  const Rational& tolerance) {
    ContractionOptions options;
    options.tolerance = tolerance;
    return contraction_retract(d, f0, options).point;
}

TightSpanPoint geodesic_point(const DistanceSpace& d, const std::string& x,
                              const std::string& y, const Rational& t) {
    const std::size_t ix = d.index_of(x);
    const std::size_t iy = d.index_of(y);
    const Rational& dxy = d.at(ix, iy);
    if (dxy == 0) {
        throw PreconditionError("geodesic endpoints at distance zero");
    }
    if (t < 0 || t > dxy) {
        throw PreconditionError("geodesic parameter outside [0, d(x,y)]");
    }
    const Certificate certificate = check_extended_four_point(d);
    if (!certificate.ok()) {
        throw PreconditionError("extended four-point condition fails: " +
                                to_string(certificate));
    }

    const std::size_t n = d.size();
    Polyhedron poly = pd_polyhedron(d);
    LinearConstraint fix_x;
    fix_x.coefficients.assign(n, Rational(0));
    fix_x.coefficients[ix] = 1;
    fix_x.relation = Relation::Equal;
    fix_x.rhs = t;
    poly.constraints.push_back(std::move(fix_x));
    LinearConstraint fix_y;
    fix_y.coefficients.assign(n, Rational(0));
    fix_y.coefficients[iy] = 1;
    fix_y.relation = Relation::Equal;
    fix_y.rhs = dxy - t;
    poly.constraints.push_back(std::move(fix_y));

    const LpResult result = minimize_over(poly, RationalVector(n, Rational(1)));
    if (result.status != LpStatus::Optimal) {
        throw VerificationError("geodesic slice LP did not reach an optimum");
    }
    // Any point of P_d dominated by an element of this slice is forced
    // back into the slice by f(x) + f(y) >= d(x,y), so the sum minimum
    // is pointwise-minimal; uniqueness then pins it down.
    const PointFunction& g = result.point;
    if (!in_td(d, g) || g[ix] != t || g[iy] != dxy - t) {
        throw VerificationError("geodesic point failed self-verification");
    }
    return make_tight_span_point(d, g);
}

std::vector<TightSpanPoint> kappa_gates(const DistanceSpace& d, const std::string& x) {
    const std::size_t ix = d.index_of(x);
    std::vector<TightSpanPoint> gates;
    for (std::size_t y = 0; y < d.size(); ++y) {
        if (d.at(ix, y) == 0) continue;
        gates.push_back(geodesic_point(d, x, d.label(y), Rational(0)));
    }
    return gates;
}

TightSpanPoint nearest_kappa_point(const DistanceSpace& d, const TightSpanPoint& f,
                                   const std::string& x) {
    if (!in_td(d, f.function)) {
        throw NotInTightSpanError("nearest gate expects a tight-span point");
    }
    const std::size_t ix = d.index_of(x);
    // Row at x of the dominating metric rho_f(u,v) = f(u) + f(v); its
    // value at x itself is zero, and retraction preserves that zero.
    const std::size_t n = d.size();
    PointFunction row(n);
    for (std::size_t u = 0; u < n; ++u) {
        row[u] = u == ix ? Rational(0) : Rational(f.function[ix] + f.function[u]);
    }
    TightSpanPoint g = retract_to_td(d, row);
    if (g.function[ix] != 0 || d_inf(f.function, g.function) != f.function[ix]) {
        throw VerificationError("nearest gate failed the distance identity");
    }
    return g;
}

TightSpanPoint kappa_common_point(const DistanceSpace& d, const std::string& x,
                                  const std::string& y) {
    const std::size_t ix = d.index_of(x);
    const std::size_t iy = d.index_of(y);
    if (d.at(ix, iy) != 0) {
        throw PreconditionError("gate sets of labels at positive distance are disjoint");
    }
    const std::size_t n = d.size();
    Polyhedron poly = pd_polyhedron(d);
    for (std::size_t fixed : {ix, iy}) {
        LinearConstraint zero;
        zero.coefficients.assign(n, Rational(0));
        zero.coefficients[fixed] = 1;
        zero.relation = Relation::Equal;
        zero.rhs = 0;
        poly.constraints.push_back(std::move(zero));
        if (ix == iy) break;
    }
    const LpResult result = minimize_over(poly, RationalVector(n, Rational(1)));
    if (result.status != LpStatus::Optimal) {
        throw VerificationError("gate intersection LP did not reach an optimum");
    }
    // A dominated point would keep both zero coordinates, so the sum
    // minimum of the slice is minimal in P_d.
    if (!in_td(d, result.point)) {
        throw VerificationError("gate intersection point failed self-verification");
    }
    return make_tight_span_point(d, result.point);
}

KappaDistanceWitness verify_kappa_distance(const DistanceSpace& d, const std::string& x,
                                           const std::string& y) {
    const std::size_t ix = d.index_of(x);
    const std::size_t iy = d.index_of(y);

    DominatingMetric pinned = pin_pair(some_dominating_metric(d), x, y);
    // Retracting the pinned metric's row at y lands in kappa(y) at
    // height <= d(x,y) over x.
    TightSpanPoint f = retract_to_td(d, kuratowski(pinned, y));
    if (f.function[iy] != 0 || f.function[ix] > d.at(ix, iy)) {
        throw VerificationError("kappa distance witness construction failed");
    }
    TightSpanPoint g = ix == iy ? f : nearest_kappa_point(d, f, x);
    const Rational distance = d_inf(f.function, g.function);
    if (distance != d.at(ix, iy)) {
        throw VerificationError("kappa distance witness is not at distance d(x,y)");
    }
    return {std::move(g), std::move(f), distance};
}

std::vector<PointFunction> tight_span_vertices(const DistanceSpace& d) {
    const auto vertices = enumerate_vertices(pd_polyhedron(d));
    std::vector<PointFunction> minimal;
    for (const auto& vertex : vertices) {
        if (in_td(d, vertex)) minimal.push_back(vertex);
    }
    return minimal;
}

}  // namespace tspan
