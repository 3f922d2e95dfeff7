#include "tspan/linalg.hpp"

#include "tspan/errors.hpp"

namespace tspan {

namespace {

// Row echelon over rationals; returns pivot column per eliminated row.
std::vector<std::size_t> echelon(RationalMatrix& m) {
    std::vector<std::size_t> pivot_columns;
    if (m.empty()) return pivot_columns;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[row], m[pivot]);
        const Rational inv = Rational(1) / m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Rational factor = m[i][col];
            for (std::size_t j = col; j < cols; ++j) {
                m[i][j] -= factor * m[row][j];
            }
        }
        pivot_columns.push_back(col);
        ++row;
    }
    return pivot_columns;
}

}  // namespace

LinearSolveResult solve_linear_system(const RationalMatrix& a, const RationalVector& b) {
    if (a.size() != b.size()) {
        throw DimensionMismatchError("system rows do not match rhs length");
    }
    if (a.empty()) {
        return {SolveOutcome::Underdetermined, {}};
    }
    const std::size_t cols = a[0].size();
    RationalMatrix m(a.size(), RationalVector(cols + 1));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = a[i][j];
        m[i][cols] = b[i];
    }
    const auto pivots = echelon(m);
    // Inconsistent if a pivot landed in the rhs column.
    if (!pivots.empty() && pivots.back() == cols) {
        return {SolveOutcome::Inconsistent, {}};
    }
    if (pivots.size() < cols) {
        return {SolveOutcome::Underdetermined, {}};
    }
    RationalVector solution(cols);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        solution[pivots[i]] = m[i][cols];
    }
    return {SolveOutcome::Unique, solution};
}

std::size_t matrix_rank(const RationalMatrix& a) {
    RationalMatrix m = a;
    return echelon(m).size();
}

std::vector<std::size_t> independent_rows(const RationalMatrix& a) {
    std::vector<std::size_t> chosen;
    RationalMatrix basis;
    for (std::size_t i = 0; i < a.size(); ++i) {
        basis.push_back(a[i]);
        if (matrix_rank(basis) == basis.size()) {
            chosen.push_back(i);
        } else {
            basis.pop_back();
        }
    }
    return chosen;
}

std::optional<RationalMatrix> invert_matrix(const RationalMatrix& a) {
    const std::size_t n = a.size();
    RationalMatrix m(n, RationalVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw DimensionMismatchError("matrix not square");
        }
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = 1;
    }
    const auto pivots = echelon(m);
    if (pivots.size() != n || pivots.back() != n - 1) {
        return std::nullopt;
    }
    RationalMatrix inverse(n, RationalVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) inverse[i][j] = m[i][n + j];
    }
    return inverse;
}

}  // namespace tspan
