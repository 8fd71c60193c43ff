#include "mrtop/geometry.hpp"

#include <cmath>
#include <string>

#include "mrtop/errors.hpp"

namespace mrtop {

Direction Direction::from_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kHalfPi)) {
        throw DomainError("direction angle outside [0, pi/2]: " + std::to_string(theta));
    }
    if (theta == kHalfPi) {
        return y_axis();
    }
    return {theta, std::tan(theta)};
}

Direction Direction::from_tangent(double t) {
    if (!(t >= 0.0)) {
        throw DomainError("direction tangent must be non-negative");
    }
    if (std::isinf(t)) {
        return y_axis();
    }
    return {std::atan(t), t};
}

DualLine dual_transform(const DataTuple& v, double tau) {
    if (!(v.a1 > 0.0) || !(v.a2 > 0.0)) {
        throw DomainError("tuple '" + v.id + "' has a non-positive attribute");
    }
    if (!(tau > 0.0)) {
        throw DomainError("tau must be positive");
    }
    DualLine line;
    line.slope = -v.a1 / v.a2;
    line.y_intercept = tau / v.a2;
    line.x_intercept = tau / v.a1;
    line.a1 = v.a1;
    line.a2 = v.a2;
    line.tau = tau;
    line.source = v.id;
    return line;
}

DualLine dual_line_from(double slope, double y_intercept, double tau, TupleId source) {
    if (!(slope < 0.0) || !(y_intercept > 0.0)) {
        throw DomainError("dual lines have negative slope and positive intercept");
    }
    const double a2 = tau / y_intercept;
    return dual_transform(DataTuple{std::move(source), -slope * a2, a2}, tau);
}

std::optional<Point> line_intersection(const DualLine& l1, const DualLine& l2) {
    if (std::abs(l1.slope - l2.slope) <= kGeometryEps) {
        return std::nullopt;
    }
    if (l1.tau == l2.tau && l1.tau > 0.0) {
        // u.p = tau and v.p = tau, solved by Cramer's rule on the normals.
        const double det = l1.a1 * l2.a2 - l1.a2 * l2.a1;
        if (det != 0.0) {
            return Point{l1.tau * (l2.a2 - l1.a2) / det, l1.tau * (l1.a1 - l2.a1) / det};
        }
    }
    const double x = (l2.y_intercept - l1.y_intercept) / (l1.slope - l2.slope);
    return Point{x, l1.y_at(x)};
}

std::optional<double> crossing_theta(const DualLine& l1, const DualLine& l2) {
    const double det = l1.a1 * l2.a2 - l1.a2 * l2.a1;
    if (det == 0.0) {
        return std::nullopt;
    }
    double dx = l2.a2 - l1.a2;
    double dy = l1.a1 - l2.a1;
    if (det < 0.0) {
        dx = -dx;
        dy = -dy;
    }
    if (dx < 0.0 || dy < 0.0) {
        return std::nullopt;
    }
    return std::atan2(dy, dx);
}

Direction direction_of(Point p) {
    if (!(p.x >= 0.0) || !(p.y >= 0.0) || (p.x == 0.0 && p.y == 0.0)) {
        throw DomainError("direction_of needs a point of the closed positive quadrant other than the origin");
    }
    if (p.x == 0.0) {
        return Direction::y_axis();
    }
    return {std::atan2(p.y, p.x), p.y / p.x};
}

bool passes_above(const DualLine& l, Point p) noexcept {
    return l.y_at(p.x) > p.y;
}

bool beats(const DataTuple& u, const DataTuple& v, const Direction& dir) noexcept {
    if (dir.is_vertical()) {
        return u.a2 > v.a2;
    }
    return score(u, dir.t) > score(v, dir.t);
}

std::size_t rank(std::span<const DataTuple> d, const DataTuple& v, const Direction& dir) noexcept {
    std::size_t count = 0;
    for (const DataTuple& u : d) {
        if (beats(u, v, dir)) {
            ++count;
        }
    }
    return count;
}

}  // namespace mrtop
