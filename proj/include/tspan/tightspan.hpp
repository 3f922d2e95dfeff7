#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tspan/distance_space.hpp"
#include "tspan/rational.hpp"

namespace tspan {

/// Exact-valued function on the point set, indexed like the labels.
using PointFunction = RationalVector;

/// A pointwise-minimal element of P_d together with, per label, the set
/// of labels attaining max_y(d(x,y) - f(y)).  Supports are always
/// recomputed from the function, never trusted from input.
struct TightSpanPoint {
    PointFunction function;
    std::vector<std::vector<std::size_t>> support;
};

/// f(x) + f(y) >= d(x,y) for all pairs, including x = y.
bool in_pd(const DistanceSpace& d, const PointFunction& f);

/// Fixed-point membership: f(x) = max_y(d(x,y) - f(y)) for every x.
bool in_td(const DistanceSpace& d, const PointFunction& f);

/// max_y(d(x,y) - f(y)) per coordinate; f# <= f whenever f lies in P_d.
PointFunction f_sharp(const DistanceSpace& d, const PointFunction& f);

TightSpanPoint make_tight_span_point(const DistanceSpace& d, const PointFunction& f);

Rational d_inf(const PointFunction& f, const PointFunction& g);

/// max over ordered pairs (x,y) of d(x,y) - f(x) - g(y); agrees with
/// d_inf on tight-span points.  Throws NotInTightSpanError otherwise.
Rational d_inf_by_formula(const DistanceSpace& d, const PointFunction& f,
                          const PointFunction& g);

/// Pointwise-minimal g <= f0 in P_d, computed as the exact LP minimum
/// of sum(g) over {g in P_d : g <= f0}.
TightSpanPoint retract_to_td(const DistanceSpace& d, const PointFunction& f0);

struct ContractionOptions {
    Rational tolerance;           // defaults to 2^-40
    std::size_t iteration_cap = 10000;
    bool attempt_exact_snap = true;
    bool record_trace = false;

    ContractionOptions();
};

struct ContractionResult {
    PointFunction point;
    bool snapped = false;
    std::size_t iterations = 0;
    /// When recorded: the (f, f#) pair after every iteration, starting
    /// with the input.
    std::vector<std::pair<PointFunction, PointFunction>> trace;
};

/// Midpoint iteration f <- (f + f#)/2 from f0 in P_d.  Stops when
/// d_inf(f, f#) <= tolerance, or earlier when the stabilized argmax
/// pattern lets the fixed point be solved exactly (snap).
ContractionResult contraction_retract(const DistanceSpace& d, const PointFunction& f0,
                                      const ContractionOptions& options = {});
PointFunction contraction_retract(const DistanceSpace& d, const PointFunction& f0,
                                  const Rational& tolerance);

/// The unique f in T_d with f(x) = t and f(y) = d(x,y) - t.  Requires
/// the extended four-point condition, d(x,y) > 0 and 0 <= t <= d(x,y);
/// the output is re-verified and failures surface as errors rather
/// than wrong answers.
TightSpanPoint geodesic_point(const DistanceSpace& d, const std::string& x,
                              const std::string& y, const Rational& t);

/// Geodesic entry points of kappa(x): one gate toward every y with
/// d(x,y) > 0.  Empty exactly when d(x,.) is identically zero, in which
/// case kappa(x) is all of T_d.
std::vector<TightSpanPoint> kappa_gates(const DistanceSpace& d, const std::string& x);

/// A point g of kappa(x) with d_inf(f, g) = f(x) exactly, built from
/// the metric rho_f(u,v) = f(u) + f(v) and a retraction of its row at x.
TightSpanPoint nearest_kappa_point(const DistanceSpace& d, const TightSpanPoint& f,
                                   const std::string& x);

/// A common point of kappa(x) and kappa(y); exists exactly when
/// d(x,y) = 0 (the gate sets meet at distance zero).
TightSpanPoint kappa_common_point(const DistanceSpace& d, const std::string& x,
                                  const std::string& y);

struct KappaDistanceWitness {
    TightSpanPoint in_kappa_x;
    TightSpanPoint in_kappa_y;
    Rational distance;
};

/// Constructive witnesses for d(x,y) = min over kappa(x) x kappa(y) of
/// d_inf: returns a pair at distance exactly d(x,y).
KappaDistanceWitness verify_kappa_distance(const DistanceSpace& d, const std::string& x,
                                           const std::string& y);

/// Vertices of P_d that are pointwise-minimal, i.e. the extreme points
/// of the tight span region.
std::vector<PointFunction> tight_span_vertices(const DistanceSpace& d);

}  // namespace tspan
