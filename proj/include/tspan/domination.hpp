#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tspan/distance_space.hpp"
#include "tspan/linear_program.hpp"
#include "tspan/rational.hpp"

namespace tspan {

using PointFunction = RationalVector;
struct TightSpanPoint;

/// A metric together with the distance space it dominates entrywise.
class DominatingMetric {
  public:
    DominatingMetric(Metric metric, DistanceSpace base);

    const Metric& metric() const { return metric_; }
    const DistanceSpace& base() const { return base_; }
    const Rational& at(std::size_t i, std::size_t j) const { return metric_.at(i, j); }
    std::size_t size() const { return base_.size(); }

  private:
    Metric metric_;
    DistanceSpace base_;
};

/// Unordered label pairs (i < j) in label order; the coordinate system
/// for the polyhedron of dominating metrics.
std::vector<std::pair<std::size_t, std::size_t>> label_pairs(std::size_t n);

/// {rho : rho >= d entrywise, rho satisfies all triangle inequalities},
/// one variable per unordered pair.
Polyhedron dominating_metric_polyhedron(const DistanceSpace& d);

DominatingMetric metric_from_pair_values(const DistanceSpace& d, const RationalVector& pairs);

/// The constant metric at diam(d), or the zero metric for null d.
/// Always a member of M(d).
DominatingMetric some_dominating_metric(const DistanceSpace& d);

/// Edits p so that the pair (x,y) is held at d(x,y) while every other
/// entry can only grow; the identity when the pair is already pinned.
DominatingMetric pin_pair(const DominatingMetric& p, const std::string& x,
                          const std::string& y);

/// Lexicographic minimum of M(d) under the given order on unordered
/// pairs (which must cover every pair exactly once).  The output is
/// pointwise-minimal in M(d).
DominatingMetric minimal_dominating_metric(
    const DistanceSpace& d,
    const std::vector<std::pair<std::string, std::string>>& pair_order);
DominatingMetric minimal_dominating_metric(const DistanceSpace& d);

/// LP certificate: no distinct member of M(d) lies pointwise below rho.
bool verify_minimal(const DominatingMetric& rho);

/// The row y -> rho(x,y); always a member of P_d.
PointFunction kuratowski(const DominatingMetric& rho, const std::string& x);

/// Non-expansive retraction of every Kuratowski row of a minimal
/// dominating metric; pairwise sup-distances reproduce rho (exactly
/// when every contraction snapped, within `tolerance` otherwise).
std::map<std::string, PointFunction> embed_minimal_metric(const DistanceSpace& d,
                                                          const DominatingMetric& rho,
                                                          const Rational& tolerance);

/// rho_f(x,y) = f(x) + f(y) off the diagonal; dominates d, and f is
/// minimal in the corresponding P.
DominatingMetric metric_from_point(const DistanceSpace& d, const TightSpanPoint& f);

}  // namespace tspan
