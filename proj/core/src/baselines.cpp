#include "mrtop/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrtop/errors.hpp"

namespace mrtop {

namespace {

void require_query(const DataTuple& q, std::uint32_t k) {
    if (k < 1) {
        throw DomainError("k must be at least 1");
    }
    if (!(q.a1 > 0.0) || !(q.a2 > 0.0)) {
        throw DomainError("query '" + q.id + "' has a non-positive attribute");
    }
}

}  // namespace

std::vector<Breakpoint> breakpoints(std::span<const DataTuple> relation, const DataTuple& q) {
    std::vector<Breakpoint> out;
    for (std::size_t row = 0; row < relation.size(); ++row) {
        const DataTuple& v = relation[row];
        if (v.a2 == q.a2) {
            continue;
        }
        const double t = (v.a1 - q.a1) / (q.a2 - v.a2);
        if (t >= 0.0 && std::isfinite(t)) {
            out.push_back({t, row});
        }
    }
    std::sort(out.begin(), out.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.t < b.t; });
    return out;
}

MrtopResult oracle_mrtop(std::span<const DataTuple> relation, const DataTuple& q, std::uint32_t k) {
    require_query(q, k);
    std::vector<double> ts;
    for (const Breakpoint& b : breakpoints(relation, q)) {
        if (b.t > 0.0 && (ts.empty() || b.t != ts.back())) {
            ts.push_back(b.t);
        }
    }
    auto in_top_k = [&](const Direction& dir) { return rank(relation, q, dir) < k; };

    // gaps[i] is the open range (ts[i-1], ts[i]) with ts[-1] = 0, ts[m] = inf.
    const std::size_t m = ts.size();
    std::vector<bool> gap_in(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double lo = i == 0 ? 0.0 : ts[i - 1];
        const double probe = i == m ? lo + 1.0 : 0.5 * (lo + ts[i]);
        gap_in[i] = in_top_k(Direction::from_tangent(probe));
    }
    const bool at_x_axis = in_top_k(Direction::x_axis());
    const bool at_y_axis = in_top_k(Direction::y_axis());

    MrtopResult result;
    for (std::size_t i = 0; i <= m; ++i) {
        if (!gap_in[i] || (i > 0 && gap_in[i - 1])) {
            continue;
        }
        std::size_t j = i;
        while (j < m && gap_in[j + 1]) {
            ++j;
        }
        AngularInterval iv;
        iv.lo = i == 0 ? Direction::x_axis() : Direction::from_tangent(ts[i - 1]);
        iv.lo_closed = i == 0 && at_x_axis;
        iv.hi = j == m ? Direction::y_axis() : Direction::from_tangent(ts[j]);
        iv.hi_closed = j == m && at_y_axis;
        result.intervals.push_back(iv);
    }
    return result;
}

MrtopResult wang_mrtop(std::span<const DataTuple> relation, const DataTuple& q, std::uint32_t k, double tau) {
    require_query(q, k);
    const DualLine lq = dual_transform(q, tau);

    // Live pieces of lq, as ranges of direction tangents along the line
    // from its x-intercept (t = 0) to its y-intercept (t = inf).
    struct Piece {
        double lo;
        double hi;
        std::uint32_t beaten;
    };
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<Piece> pieces{{0.0, kInf, 0}};
    std::vector<Piece> next;

    for (const DataTuple& p : relation) {
        if (pieces.empty()) {
            break;
        }
        const DualLine lp = dual_transform(p, tau);
        // Near the x-axis lp is nearer the origin than lq iff p1 > q1.
        const bool nearer_at_start = p.a1 > q.a1;
        double split = kInf;
        if (const auto theta = crossing_theta(lq, lp); theta && line_intersection(lq, lp)) {
            split = *theta >= kHalfPi ? kInf : std::tan(*theta);
        }
        next.clear();
        auto keep = [&](Piece piece, bool beaten) {
            if (piece.hi <= piece.lo) {
                return;
            }
            if (beaten && ++piece.beaten >= k) {
                return;
            }
            next.push_back(piece);
        };
        for (const Piece& piece : pieces) {
            if (split <= piece.lo) {
                keep(piece, !nearer_at_start);
            } else if (split >= piece.hi) {
                keep(piece, nearer_at_start);
            } else {
                keep({piece.lo, split, piece.beaten}, nearer_at_start);
                keep({split, piece.hi, piece.beaten}, !nearer_at_start);
            }
        }
        pieces.swap(next);
    }

    std::vector<AngularInterval> raw;
    for (const Piece& piece : pieces) {
        AngularInterval iv;
        iv.lo = Direction::from_tangent(piece.lo);
        iv.hi = Direction::from_tangent(piece.hi);
        iv.lo_closed = piece.lo == 0.0;
        iv.hi_closed = std::isinf(piece.hi);
        raw.push_back(iv);
    }
    MrtopResult result;
    result.intervals = merge_adjacent(raw);
    return result;
}

}  // namespace mrtop
