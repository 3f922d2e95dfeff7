#pragma once

#include <optional>
#include <vector>

#include "tspan/rational.hpp"

namespace tspan {

enum class SolveOutcome { Unique, Underdetermined, Inconsistent };

struct LinearSolveResult {
    SolveOutcome outcome = SolveOutcome::Inconsistent;
    RationalVector solution;  // populated only when unique
};

/// Gaussian elimination over rationals for A x = b.
LinearSolveResult solve_linear_system(const RationalMatrix& a, const RationalVector& b);

std::size_t matrix_rank(const RationalMatrix& a);

/// Row indices of a maximal independent subset, scanned in input order.
std::vector<std::size_t> independent_rows(const RationalMatrix& a);

/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<RationalMatrix> invert_matrix(const RationalMatrix& a);

}  // namespace tspan
