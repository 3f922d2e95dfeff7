#include "tspan/distance_space.hpp"

#include <algorithm>
#include <set>

#include "tspan/errors.hpp"

namespace tspan {

DistanceSpace::DistanceSpace(std::vector<std::string> labels, RationalMatrix table)
    : labels_(std::move(labels)), table_(std::move(table)) {
    const std::size_t n = labels_.size();
    if (n == 0) {
        throw ParseError("a distance space needs at least one point");
    }
    std::set<std::string> seen;
    for (const auto& label : labels_) {
        if (label.empty()) {
            throw ParseError("empty label");
        }
        if (!seen.insert(label).second) {
            throw ParseError("duplicate label '" + label + "'");
        }
    }
    if (table_.size() != n) {
        throw DimensionMismatchError("table is not square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (table_[i].size() != n) {
            throw DimensionMismatchError("table is not square");
        }
        if (table_[i][i] != 0) {
            throw ParseError("nonzero diagonal at '" + labels_[i] + "'");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (table_[i][j] < 0) {
                throw ParseError("negative distance at (" + labels_[i] + ", " + labels_[j] + ")");
            }
            if (table_[i][j] != table_[j][i]) {
                throw ParseError("asymmetric table at (" + labels_[i] + ", " + labels_[j] + ")");
            }
        }
    }
}

std::size_t DistanceSpace::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw UnknownLabelError("unknown label '" + label + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

Rational DistanceSpace::diameter() const {
    Rational best(0);
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = i + 1; j < size(); ++j) {
            best = std::max(best, table_[i][j]);
        }
    }
    return best;
}

bool DistanceSpace::is_null() const {
    return diameter() == 0;
}

Metric::Metric(DistanceSpace space) : space_(std::move(space)) {
    const Certificate certificate = check_metric(space_);
    if (!certificate.ok()) {
        throw PreconditionError("not a metric: " + to_string(certificate));
    }
}

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::Ok: return "ok";
        case CertificateKind::MetricViolation: return "metric-violation";
        case CertificateKind::FourPointViolation: return "fourpoint-violation";
        case CertificateKind::ExtFourPointViolation: return "ext-fourpoint-violation";
        case CertificateKind::DiversityAxiomViolation: return "diversity-axiom-violation";
        case CertificateKind::SubtreeMismatch: return "subtree-mismatch";
    }
    return "ok";
}

std::string to_string(const Certificate& certificate) {
    if (certificate.ok()) return "ok";
    std::string out = to_string(certificate.kind) + " at (";
    for (std::size_t i = 0; i < certificate.witness.size(); ++i) {
        if (i > 0) out += ",";
        out += certificate.witness[i];
    }
    out += "): " + certificate.lhs.str() + " > " + certificate.rhs.str();
    return out;
}

Certificate check_metric(const DistanceSpace& d) {
    const std::size_t n = d.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                const Rational& lhs = d.at(a, c);
                Rational rhs = d.at(a, b) + d.at(b, c);
                if (lhs > rhs) {
                    return {CertificateKind::MetricViolation,
                            {d.label(a), d.label(b), d.label(c)},
                            lhs,
                            rhs};
                }
            }
        }
    }
    return {};
}

namespace {

// Shared quadruple scan.  The extended condition adds the two single
// distances and the four half-perimeter terms to the max.
Certificate scan_quadruples(const DistanceSpace& d, bool extended) {
    const std::size_t n = d.size();
    const auto half_perimeter = [&](std::size_t i, std::size_t j, std::size_t k) -> Rational {
        return (d.at(i, j) + d.at(j, k) + d.at(k, i)) / 2;
    };
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t e = 0; e < n; ++e) {
                    Rational lhs = d.at(a, c) + d.at(b, e);
                    Rational rhs = std::max(Rational(d.at(a, b) + d.at(c, e)),
                                            Rational(d.at(a, e) + d.at(b, c)));
                    if (extended) {
                        rhs = std::max({rhs, d.at(a, c), d.at(b, e), half_perimeter(a, b, c),
                                        half_perimeter(a, b, e), half_perimeter(a, c, e),
                                        half_perimeter(b, c, e)});
                    }
                    if (lhs > rhs) {
                        return {extended ? CertificateKind::ExtFourPointViolation
                                         : CertificateKind::FourPointViolation,
                                {d.label(a), d.label(b), d.label(c), d.label(e)},
                                lhs,
                                rhs};
                    }
                }
            }
        }
    }
    return {};
}

}  // namespace

Certificate check_four_point(const DistanceSpace& d) {
    return scan_quadruples(d, false);
}

Certificate check_extended_four_point(const DistanceSpace& d) {
    return scan_quadruples(d, true);
}

bool recheck_certificate(const DistanceSpace& d, const Certificate& certificate) {
    if (certificate.ok()) return true;
    std::vector<std::size_t> w;
    w.reserve(certificate.witness.size());
    for (const auto& label : certificate.witness) {
        w.push_back(d.index_of(label));
    }
    Rational lhs, rhs;
    switch (certificate.kind) {
        case CertificateKind::MetricViolation: {
            if (w.size() != 3) return false;
            lhs = d.at(w[0], w[2]);
            rhs = d.at(w[0], w[1]) + d.at(w[1], w[2]);
            break;
        }
        case CertificateKind::FourPointViolation:
        case CertificateKind::ExtFourPointViolation: {
            if (w.size() != 4) return false;
            lhs = d.at(w[0], w[2]) + d.at(w[1], w[3]);
            rhs = std::max(d.at(w[0], w[1]) + d.at(w[2], w[3]),
                           d.at(w[0], w[3]) + d.at(w[1], w[2]));
            if (certificate.kind == CertificateKind::ExtFourPointViolation) {
                const auto half = [&](std::size_t i, std::size_t j, std::size_t k) -> Rational {
                    return (d.at(i, j) + d.at(j, k) + d.at(k, i)) / 2;
                };
                rhs = std::max({rhs, d.at(w[0], w[2]), d.at(w[1], w[3]), half(w[0], w[1], w[2]),
                                half(w[0], w[1], w[3]), half(w[0], w[2], w[3]),
                                half(w[1], w[2], w[3])});
            }
            break;
        }
        default:
            return false;
    }
    return lhs == certificate.lhs && rhs == certificate.rhs && lhs > rhs;
}

DistanceSpace restrict(const DistanceSpace& d, const std::vector<std::string>& subset) {
    if (subset.empty()) {
        throw ParseError("cannot restrict to an empty label set");
    }
    std::vector<std::size_t> indices;
    indices.reserve(subset.size());
    for (const auto& label : subset) {
        indices.push_back(d.index_of(label));
    }
    RationalMatrix table(subset.size(), RationalVector(subset.size()));
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = 0; j < subset.size(); ++j) {
            table[i][j] = d.at(indices[i], indices[j]);
        }
    }
    return DistanceSpace(subset, std::move(table));
}

Polyhedron pd_polyhedron(const DistanceSpace& d) {
    const std::size_t n = d.size();
    Polyhedron poly;
    poly.variable_count = n;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            LinearConstraint c;
            c.coefficients.assign(n, Rational(0));
            c.coefficients[i] += 1;
            c.coefficients[j] += 1;
            c.rhs = d.at(i, j);
            poly.constraints.push_back(std::move(c));
        }
    }
    return poly;
}

}  // namespace tspan
