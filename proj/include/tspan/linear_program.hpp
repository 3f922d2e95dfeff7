#pragma once

#include <cstddef>
#include <vector>

#include "tspan/rational.hpp"

namespace tspan {

enum class Relation { GreaterEqual, Equal };

struct LinearConstraint {
    RationalVector coefficients;  // one entry per variable
    Relation relation = Relation::GreaterEqual;
    Rational rhs;
};

/// Minimization problem over free (sign-unrestricted) variables.
struct LinearProgram {
    std::size_t variable_count = 0;
    std::vector<LinearConstraint> constraints;
    RationalVector objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    RationalVector point;
};

/// H-representation of a closed convex polyhedron.  Shared between the
/// simplex solver and the vertex enumerator.
struct Polyhedron {
    std::size_t variable_count = 0;
    std::vector<LinearConstraint> constraints;
};

/// Two-phase primal simplex over exact rationals.  Bland's rule by
/// default, so the pivot sequence is fixed and the same input always
/// yields the same optimal point.  Set TSK_LP_PIVOT=dantzig to switch
/// the entering-variable rule (testing only, termination no longer
/// guaranteed on degenerate cycling instances).
LpResult solve_lp(const LinearProgram& lp);

/// Sequentially minimizes the listed variables over the polyhedron,
/// fixing each at its optimum before moving to the next.  Variables not
/// listed keep whatever values the final LP assigns them.
/// Throws InfeasibleRegionError / UnboundedCoordinateError.
RationalVector lex_minimize(const Polyhedron& poly,
                            const std::vector<std::size_t>& priority);

/// Convenience: minimize a single linear objective over a polyhedron.
LpResult minimize_over(const Polyhedron& poly, const RationalVector& objective);

}  // namespace tspan
