#include "tspan/domination.hpp"

#include <algorithm>

#include "tspan/errors.hpp"
#include "tspan/tightspan.hpp"

namespace tspan {

DominatingMetric::DominatingMetric(Metric metric, DistanceSpace base)
    : metric_(std::move(metric)), base_(std::move(base)) {
    if (metric_.space().labels() != base_.labels()) {
        throw DimensionMismatchError("metric and base use different labels");
    }
    for (std::size_t i = 0; i < base_.size(); ++i) {
        for (std::size_t j = i + 1; j < base_.size(); ++j) {
            if (metric_.at(i, j) < base_.at(i, j)) {
                throw NotDominatingError("metric entry (" + base_.label(i) + ", " +
                                         base_.label(j) + ") lies below the base distance");
            }
        }
    }
}

std::vector<std::pair<std::size_t, std::size_t>> label_pairs(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

namespace {

std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    // Offset of row i in the upper-triangular enumeration.
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

Polyhedron dominating_metric_polyhedron(const DistanceSpace& d) {
    const std::size_t n = d.size();
    const auto pairs = label_pairs(n);
    Polyhedron poly;
    poly.variable_count = pairs.size();
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        LinearConstraint dominate;
        dominate.coefficients.assign(pairs.size(), Rational(0));
        dominate.coefficients[p] = 1;
        dominate.rhs = d.at(pairs[p].first, pairs[p].second);
        poly.constraints.push_back(std::move(dominate));
    }
    // rho(i,k) <= rho(i,j) + rho(j,k) for all distinct triples.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                LinearConstraint triangle;
                triangle.coefficients.assign(pairs.size(), Rational(0));
                triangle.coefficients[pair_index(n, i, j)] += 1;
                triangle.coefficients[pair_index(n, j, k)] += 1;
                triangle.coefficients[pair_index(n, i, k)] -= 1;
                triangle.rhs = 0;
                poly.constraints.push_back(std::move(triangle));
            }
        }
    }
    return poly;
}

DominatingMetric metric_from_pair_values(const DistanceSpace& d, const RationalVector& pairs) {
    const std::size_t n = d.size();
    if (pairs.size() != n * (n - 1) / 2) {
        throw DimensionMismatchError("pair vector length does not match the point set");
    }
    RationalMatrix table(n, RationalVector(n, Rational(0)));
    for (const auto& [i, j] : label_pairs(n)) {
        table[i][j] = table[j][i] = pairs[pair_index(n, i, j)];
    }
    return DominatingMetric(Metric(DistanceSpace(d.labels(), std::move(table))), d);
}

DominatingMetric some_dominating_metric(const DistanceSpace& d) {
    const std::size_t n = d.size();
    const Rational diam = d.diameter();
    RationalMatrix table(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) table[i][j] = diam;
        }
    }
    return DominatingMetric(Metric(DistanceSpace(d.labels(), std::move(table))), d);
}

DominatingMetric pin_pair(const DominatingMetric& p, const std::string& x,
                          const std::string& y) {
    const DistanceSpace& base = p.base();
    const std::size_t ix = base.index_of(x);
    const std::size_t iy = base.index_of(y);
    const Rational& target = base.at(ix, iy);
    if (p.at(ix, iy) == target) {
        // The construction assumes strict slack; applying it anyway
        // would needlessly inflate the other entries.
        return p;
    }
    const std::size_t n = base.size();
    const Rational pxy = p.at(ix, iy);
    RationalMatrix table(n, RationalVector(n, Rational(0)));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            Rational value;
            if ((u == ix && v == iy) || (u == iy && v == ix)) {
                value = target;
            } else if (u == ix || v == ix) {
                const std::size_t other = u == ix ? v : u;
                value = p.at(ix, other) + pxy - target;
            } else if (u == iy || v == iy) {
                const std::size_t other = u == iy ? v : u;
                value = p.at(ix, other) + pxy;
            } else {
                value = p.at(u, v);
            }
            table[u][v] = table[v][u] = value;
        }
    }
    return DominatingMetric(Metric(DistanceSpace(base.labels(), std::move(table))), base);
}

DominatingMetric minimal_dominating_metric(
    const DistanceSpace& d,
    const std::vector<std::pair<std::string, std::string>>& pair_order) {
    const std::size_t n = d.size();
    const std::size_t pair_count = n * (n - 1) / 2;
    std::vector<std::size_t> priority;
    std::vector<bool> seen(pair_count, false);
    for (const auto& [a, b] : pair_order) {
        const std::size_t ia = d.index_of(a);
        const std::size_t ib = d.index_of(b);
        if (ia == ib) {
            throw PreconditionError("pair order contains a diagonal pair");
        }
        const std::size_t index = pair_index(n, ia, ib);
        if (seen[index]) {
            throw PreconditionError("pair order repeats a pair");
        }
        seen[index] = true;
        priority.push_back(index);
    }
    if (priority.size() != pair_count) {
        throw PreconditionError("pair order must cover every unordered pair exactly once");
    }
    const RationalVector values = lex_minimize(dominating_metric_polyhedron(d), priority);
    return metric_from_pair_values(d, values);
}

DominatingMetric minimal_dominating_metric(const DistanceSpace& d) {
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& [i, j] : label_pairs(d.size())) {
        order.emplace_back(d.label(i), d.label(j));
    }
    return minimal_dominating_metric(d, order);
}

bool verify_minimal(const DominatingMetric& rho) {
    const DistanceSpace& base = rho.base();
    const std::size_t n = base.size();
    const auto pairs = label_pairs(n);
    Polyhedron poly = dominating_metric_polyhedron(base);
    Rational rho_sum(0);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const Rational& value = rho.at(pairs[p].first, pairs[p].second);
        LinearConstraint upper;
        upper.coefficients.assign(pairs.size(), Rational(0));
        upper.coefficients[p] = -1;
        upper.rhs = -value;
        poly.constraints.push_back(std::move(upper));
        rho_sum += value;
    }
    const LpResult result = minimize_over(poly, RationalVector(pairs.size(), Rational(1)));
    if (result.status != LpStatus::Optimal) {
        throw VerificationError("minimality LP did not reach an optimum");
    }
    return result.value == rho_sum;
}

PointFunction kuratowski(const DominatingMetric& rho, const std::string& x) {
    const std::size_t ix = rho.base().index_of(x);
    PointFunction row(rho.size());
    for (std::size_t y = 0; y < rho.size(); ++y) {
        row[y] = rho.at(ix, y);
    }
    return row;
}

std::map<std::string, PointFunction> embed_minimal_metric(const DistanceSpace& d,
                                                          const DominatingMetric& rho,
                                                          const Rational& tolerance) {
    if (&rho.base() != &d && rho.base().labels() != d.labels()) {
        throw DimensionMismatchError("metric does not dominate this space");
    }
    if (!verify_minimal(rho)) {
        throw PreconditionError("metric is not certified minimal in M(d)");
    }
    ContractionOptions options;
    options.tolerance = tolerance;

    std::map<std::string, PointFunction> embedding;
    bool all_snapped = true;
    for (std::size_t x = 0; x < d.size(); ++x) {
        ContractionResult r = contraction_retract(d, kuratowski(rho, d.label(x)), options);
        all_snapped = all_snapped && r.snapped;
        embedding[d.label(x)] = std::move(r.point);
    }
    for (std::size_t x = 0; x < d.size(); ++x) {
        for (std::size_t y = x + 1; y < d.size(); ++y) {
            const Rational gap =
                abs(d_inf(embedding[d.label(x)], embedding[d.label(y)]) - rho.at(x, y));
            if (gap == 0) continue;
            if (all_snapped || gap > tolerance) {
                throw ToleranceExceededError("embedded distance for (" + d.label(x) + ", " +
                                             d.label(y) + ") is off by " + gap.str());
            }
        }
    }
    return embedding;
}

DominatingMetric metric_from_point(const DistanceSpace& d, const TightSpanPoint& f) {
    if (!in_td(d, f.function)) {
        throw NotInTightSpanError("metric_from_point expects a tight-span point");
    }
    const std::size_t n = d.size();
    RationalMatrix table(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) table[i][j] = f.function[i] + f.function[j];
        }
    }
    return DominatingMetric(Metric(DistanceSpace(d.labels(), std::move(table))), d);
}

}  // namespace tspan
