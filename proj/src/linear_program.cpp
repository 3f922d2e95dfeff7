#include "tspan/linear_program.hpp"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <string>

#include "tspan/errors.hpp"

namespace tspan {

namespace {

enum class PivotRule { Bland, Dantzig };

PivotRule pivot_rule_from_env() {
    const char* value = std::getenv("TSK_LP_PIVOT");
    if (value != nullptr && std::strcmp(value, "dantzig") == 0) {
        return PivotRule::Dantzig;
    }
    return PivotRule::Bland;
}

// Dense tableau simplex.  Each free variable x_j is split into
// x_j = pos_j - neg_j with pos, neg >= 0; every constraint becomes an
// equality with b >= 0 via slack and artificial columns.
class SimplexTableau {
  public:
    SimplexTableau(const LinearProgram& lp, PivotRule rule)
        : rule_(rule), original_vars_(lp.variable_count) {
        const std::size_t m = lp.constraints.size();
        split_columns_ = 2 * original_vars_;

        // Count slack columns (one per inequality row).
        std::size_t slack_count = 0;
        for (const auto& c : lp.constraints) {
            if (c.relation == Relation::GreaterEqual) ++slack_count;
        }
        slack_offset_ = split_columns_;
        artificial_offset_ = slack_offset_ + slack_count;
        total_columns_ = artificial_offset_ + m;  // at most one artificial per row

        rows_.assign(m, RationalVector(total_columns_ + 1));
        basis_.assign(m, 0);

        std::size_t slack_index = 0;
        std::size_t artificial_count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& c = lp.constraints[i];
            if (c.coefficients.size() != lp.variable_count) {
                throw DimensionMismatchError("constraint arity does not match variable count");
            }
            int sign = 1;
            bool needs_artificial = true;
            if (c.relation == Relation::GreaterEqual) {
                if (c.rhs <= 0) {
                    // Flip to <= with nonnegative rhs; slack is basic.
                    sign = -1;
                    needs_artificial = false;
                } else {
                    sign = 1;
                }
            } else if (c.rhs < 0) {
                sign = -1;
            }
            auto& row = rows_[i];
            for (std::size_t j = 0; j < original_vars_; ++j) {
                Rational a = sign * c.coefficients[j];
                row[2 * j] = a;
                row[2 * j + 1] = -a;
            }
            row[total_columns_] = sign * c.rhs;
            if (c.relation == Relation::GreaterEqual) {
                // sign=1: surplus (-1); sign=-1: slack (+1).
                row[slack_offset_ + slack_index] = sign == 1 ? Rational(-1) : Rational(1);
                if (!needs_artificial) basis_[i] = slack_offset_ + slack_index;
                ++slack_index;
            }
            if (needs_artificial) {
                row[artificial_offset_ + i] = 1;
                basis_[i] = artificial_offset_ + i;
                ++artificial_count;
            }
        }
        has_artificials_ = artificial_count > 0;

        objective_.assign(total_columns_ + 1, Rational(0));
        for (std::size_t j = 0; j < original_vars_; ++j) {
            objective_[2 * j] = lp.objective[j];
            objective_[2 * j + 1] = -lp.objective[j];
        }
    }

    LpResult run() {
        if (has_artificials_) {
            RationalVector phase1(total_columns_ + 1, Rational(0));
            for (std::size_t j = artificial_offset_; j < total_columns_; ++j) {
                phase1[j] = 1;
            }
            Rational value = optimize(phase1, artificial_offset_);
            if (value != 0) {
                return {LpStatus::Infeasible, Rational(0), {}};
            }
            evict_artificials();
        }
        artificials_forbidden_ = true;
        Rational value;
        try {
            value = optimize(objective_, artificial_offset_);
        } catch (const UnboundedCoordinateError&) {
            return {LpStatus::Unbounded, Rational(0), {}};
        }
        return {LpStatus::Optimal, value, extract_point()};
    }

  private:
    // Minimizes cost over the current feasible basis; returns the optimum.
    // Columns at or beyond `column_limit` never enter once forbidden.
    // For feasible x: cost . x = reduced . x - reduced[rhs], so the value
    // of the current basic solution is always -reduced[rhs].
    Rational optimize(const RationalVector& cost, std::size_t column_limit) {
        reduced_ = cost;
        // Price out the basic columns.
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t b = basis_[i];
            if (reduced_[b] == 0) continue;
            Rational factor = reduced_[b];
            for (std::size_t j = 0; j <= total_columns_; ++j) {
                reduced_[j] -= factor * rows_[i][j];
            }
        }

        while (true) {
            const std::size_t limit = artificials_forbidden_ ? column_limit : total_columns_;
            std::size_t entering = total_columns_;
            if (rule_ == PivotRule::Bland) {
                for (std::size_t j = 0; j < limit; ++j) {
                    if (reduced_[j] < 0) {
                        entering = j;
                        break;
                    }
                }
            } else {
                Rational best(0);
                for (std::size_t j = 0; j < limit; ++j) {
                    if (reduced_[j] < best) {
                        best = reduced_[j];
                        entering = j;
                    }
                }
            }
            if (entering == total_columns_) break;  // optimal

            // Ratio test; ties broken by lowest basic variable index
            // (Bland) so the walk cannot cycle.
            std::size_t leaving_row = rows_.size();
            Rational best_ratio(0);
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                const Rational& a = rows_[i][entering];
                if (a <= 0) continue;
                Rational ratio = rows_[i][total_columns_] / a;
                if (leaving_row == rows_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving_row])) {
                    leaving_row = i;
                    best_ratio = ratio;
                }
            }
            if (leaving_row == rows_.size()) {
                throw UnboundedCoordinateError("objective unbounded below");
            }
            pivot(leaving_row, entering);
        }
        return -reduced_[total_columns_];
    }

    void pivot(std::size_t row, std::size_t col) {
        auto& r = rows_[row];
        const Rational inv = Rational(1) / r[col];
        if (inv != 1) {
            for (auto& v : r) v *= inv;
        }
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i == row || rows_[i][col] == 0) continue;
            const Rational factor = rows_[i][col];
            auto& target = rows_[i];
            for (std::size_t j = 0; j <= total_columns_; ++j) {
                if (r[j] != 0) target[j] -= factor * r[j];
            }
        }
        if (reduced_[col] != 0) {
            const Rational factor = reduced_[col];
            for (std::size_t j = 0; j <= total_columns_; ++j) {
                if (r[j] != 0) reduced_[j] -= factor * r[j];
            }
        }
        basis_[row] = col;
    }

    // After phase 1 at optimum zero, pivot residual artificial columns out
    // of the basis; rows that admit no pivot are redundant and harmless.
    void evict_artificials() {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (basis_[i] < artificial_offset_) continue;
            std::size_t col = artificial_offset_;
            for (std::size_t j = 0; j < artificial_offset_; ++j) {
                if (rows_[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col < artificial_offset_) {
                pivot(i, col);
            }
        }
    }

    RationalVector extract_point() const {
        RationalVector split(total_columns_, Rational(0));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            split[basis_[i]] = rows_[i][total_columns_];
        }
        RationalVector point(original_vars_);
        for (std::size_t j = 0; j < original_vars_; ++j) {
            point[j] = split[2 * j] - split[2 * j + 1];
        }
        return point;
    }

    PivotRule rule_;
    std::size_t original_vars_;
    std::size_t split_columns_ = 0;
    std::size_t slack_offset_ = 0;
    std::size_t artificial_offset_ = 0;
    std::size_t total_columns_ = 0;
    bool has_artificials_ = false;
    bool artificials_forbidden_ = false;
    std::vector<RationalVector> rows_;
    RationalVector reduced_;
    RationalVector objective_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
    if (lp.objective.size() != lp.variable_count) {
        throw DimensionMismatchError("objective arity does not match variable count");
    }
    SimplexTableau tableau(lp, pivot_rule_from_env());
    return tableau.run();
}

LpResult minimize_over(const Polyhedron& poly, const RationalVector& objective) {
    LinearProgram lp;
    lp.variable_count = poly.variable_count;
    lp.constraints = poly.constraints;
    lp.objective = objective;
    return solve_lp(lp);
}

RationalVector lex_minimize(const Polyhedron& poly,
                            const std::vector<std::size_t>& priority) {
    LinearProgram lp;
    lp.variable_count = poly.variable_count;
    lp.constraints = poly.constraints;
    lp.objective.assign(poly.variable_count, Rational(0));

    LpResult last;
    for (std::size_t var : priority) {
        if (var >= poly.variable_count) {
            throw DimensionMismatchError("priority index out of range");
        }
        lp.objective.assign(poly.variable_count, Rational(0));
        lp.objective[var] = 1;
        last = solve_lp(lp);
        if (last.status == LpStatus::Infeasible) {
            throw InfeasibleRegionError("lexicographic minimization over an empty region");
        }
        if (last.status == LpStatus::Unbounded) {
            throw UnboundedCoordinateError("coordinate " + std::to_string(var) +
                                           " has no finite minimum");
        }
        LinearConstraint fix;
        fix.coefficients.assign(poly.variable_count, Rational(0));
        fix.coefficients[var] = 1;
        fix.relation = Relation::Equal;
        fix.rhs = last.value;
        lp.constraints.push_back(fix);
    }
    if (priority.empty()) {
        lp.objective.assign(poly.variable_count, Rational(0));
        last = solve_lp(lp);
        if (last.status != LpStatus::Optimal) {
            throw InfeasibleRegionError("lexicographic minimization over an empty region");
        }
    }
    return last.point;
}

}  // namespace tspan
