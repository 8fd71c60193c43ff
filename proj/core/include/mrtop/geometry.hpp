#pragma once

// Geometric primitives of the dual (translated-nullspace) view of a
// two-attribute relation. A tuple v = (a1, a2) maps to the line
// { u : u . v = tau }; along any ray from the origin, lines that are met
// sooner belong to tuples with a higher linear score in that direction.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>

namespace mrtop {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Absolute tolerance for parallelism and turn tests.
inline constexpr double kGeometryEps = 1e-12;

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

using TupleId = std::string;

/// One row of a two-attribute relation. Both attributes must be positive.
struct DataTuple {
    TupleId id;
    double a1 = 0.0;
    double a2 = 0.0;

    friend bool operator==(const DataTuple&, const DataTuple&) = default;
};

/// Translated nullspace y = tau/a2 - (a1/a2) x of a tuple.
///
/// The normal (a1, a2) is kept next to the slope/intercept form: crossing
/// directions are computed from normals, which is exact in the inputs and
/// independent of tau.
struct DualLine {
    double slope = 0.0;
    double y_intercept = 0.0;
    double x_intercept = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double tau = 0.0;
    TupleId source;

    double y_at(double x) const noexcept { return y_intercept + slope * x; }

    friend bool operator==(const DualLine&, const DualLine&) = default;
};

/// A query direction in [0, pi/2], stored both as an angle and as its
/// tangent t (t = +inf at pi/2). Scores are taken against the weight (1, t).
struct Direction {
    double theta = 0.0;
    double t = 0.0;

    static Direction from_theta(double theta);
    static Direction from_tangent(double t);
    static Direction x_axis() noexcept { return {0.0, 0.0}; }
    static Direction y_axis() noexcept { return {kHalfPi, std::numeric_limits<double>::infinity()}; }

    bool is_vertical() const noexcept { return theta >= kHalfPi; }

    friend bool operator==(const Direction&, const Direction&) = default;
};

/// Interval of directions. Interior endpoints are always open; only an
/// endpoint at exactly 0 or pi/2 may be closed.
struct AngularInterval {
    Direction lo;
    Direction hi;
    bool lo_closed = false;
    bool hi_closed = false;

    friend bool operator==(const AngularInterval&, const AngularInterval&) = default;
};

/// Throws DomainError unless v.a1 > 0, v.a2 > 0 and tau > 0.
DualLine dual_transform(const DataTuple& v, double tau);

/// Builds the line y = y_intercept + slope * x as the dual of the tuple
/// (-slope * tau / y_intercept, tau / y_intercept).
DualLine dual_line_from(double slope, double y_intercept, double tau = 1.0, TupleId source = {});

/// Crossing point, or nullopt when the slopes agree within kGeometryEps.
std::optional<Point> line_intersection(const DualLine& l1, const DualLine& l2);

/// Angle of the crossing of two duals built with the same tau, computed
/// from their normals; nullopt when it is outside the closed positive
/// quadrant or the normals are proportional.
std::optional<double> crossing_theta(const DualLine& l1, const DualLine& l2);

/// Direction of a point of the closed positive quadrant other than the origin.
Direction direction_of(Point p);

inline double polar_angle(Point p) noexcept { return std::atan2(p.y, p.x); }

/// True iff the line's y-value at p.x strictly exceeds p.y.
bool passes_above(const DualLine& l, Point p) noexcept;

/// Score of v against the weight (1, t); only meaningful for finite t.
inline double score(const DataTuple& v, double t) noexcept { return v.a1 + v.a2 * t; }

/// True iff u scores strictly higher than v in direction dir. At pi/2 only
/// the second attribute is compared.
bool beats(const DataTuple& u, const DataTuple& v, const Direction& dir) noexcept;

/// Number of tuples of d scoring strictly higher than v in direction dir.
std::size_t rank(std::span<const DataTuple> d, const DataTuple& v, const Direction& dir) noexcept;

}  // namespace mrtop
