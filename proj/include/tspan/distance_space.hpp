#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tspan/linear_program.hpp"
#include "tspan/rational.hpp"

namespace tspan {

/// Finite labeled point set with an exact symmetric nonnegative
/// dissimilarity table.  No triangle inequality is required.
class DistanceSpace {
  public:
    DistanceSpace(std::vector<std::string> labels, RationalMatrix table);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const RationalMatrix& table() const { return table_; }
    const Rational& at(std::size_t i, std::size_t j) const { return table_[i][j]; }

    /// Throws UnknownLabelError.
    std::size_t index_of(const std::string& label) const;

    Rational diameter() const;
    bool is_null() const;  // all distances zero

  private:
    std::vector<std::string> labels_;
    RationalMatrix table_;
};

/// A distance space satisfying the triangle inequality.  Zero distance
/// between distinct points is allowed.
class Metric {
  public:
    explicit Metric(DistanceSpace space);

    const DistanceSpace& space() const { return space_; }
    std::size_t size() const { return space_.size(); }
    const Rational& at(std::size_t i, std::size_t j) const { return space_.at(i, j); }

  private:
    DistanceSpace space_;
};

enum class CertificateKind {
    Ok,
    MetricViolation,
    FourPointViolation,
    ExtFourPointViolation,
    DiversityAxiomViolation,
    SubtreeMismatch,
};

/// Self-verifying witness: re-evaluating the named inequality on the
/// witness labels reproduces lhs > rhs exactly.
struct Certificate {
    CertificateKind kind = CertificateKind::Ok;
    std::vector<std::string> witness;
    Rational lhs;
    Rational rhs;

    bool ok() const { return kind == CertificateKind::Ok; }
};

std::string to_string(CertificateKind kind);
std::string to_string(const Certificate& certificate);

/// Triangle inequality check.  The witness (a,b,c) of a violation means
/// d(a,c) > d(a,b) + d(b,c); the lexicographically first such triple in
/// label order is reported.
Certificate check_metric(const DistanceSpace& d);

/// Classical four-point condition, scanned over ordered quadruples
/// (a,b,c,d) with repetition:
///   d(a,c) + d(b,d) <= max{d(a,b) + d(c,d), d(a,d) + d(b,c)}.
Certificate check_four_point(const DistanceSpace& d);

/// Extended four-point condition.  Same quadruple pairing as above with
/// the max enlarged by the two lhs summands and the four half-perimeter
/// terms (kept exact, no rounding).
Certificate check_extended_four_point(const DistanceSpace& d);

/// Recomputes the certificate's inequality on its witness against `d`.
/// True for certificates produced from `d` (or any space agreeing on
/// the witness labels).
bool recheck_certificate(const DistanceSpace& d, const Certificate& certificate);

/// Principal submatrix on the given labels.
DistanceSpace restrict(const DistanceSpace& d, const std::vector<std::string>& subset);

/// The polyhedron P = {f : f(x) + f(y) >= d(x,y) for all x, y}, pairs
/// with x = y included (hence f >= 0).
Polyhedron pd_polyhedron(const DistanceSpace& d);

}  // namespace tspan
