#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrtop/geometry.hpp"
#include "mrtop/kpolygon.hpp"

namespace mrtop {

enum class QueryMode {
    /// Binary search on the hull and scan only the concavities of hull
    /// edges that the query line crosses.
    hull_only,
    /// Additionally scan every concavity whose hull edge lies wholly inside
    /// the query line, where a pocket may poke out and back in.
    strict,
};

struct QueryOptions {
    QueryMode mode = QueryMode::strict;
};

/// Directions where the query tuple is in the top-k, as maximal disjoint
/// intervals in ascending order.
struct MrtopResult {
    std::vector<AngularInterval> intervals;
    /// Contour points where the query line enters or leaves the polygon.
    std::vector<Point> crossings;

    bool empty() const noexcept { return intervals.empty(); }
};

struct HullSearchResult {
    /// Hull edges (edge i joins hull[i] and hull[i+1]) reached by the search,
    /// ascending. At most two of them are crossed by the line.
    std::vector<std::size_t> edges;
    bool inside_at_start = false;  // line passes strictly below hull.front()
    bool inside_at_end = false;    // line passes strictly below hull.back()
    /// Number of hull vertices whose side of the line was tested.
    std::size_t visited = 0;
};

struct BoundaryCrossing {
    Point point;
    Direction direction;
};

/// True iff p lies strictly beyond lq as seen from the origin, i.e. the
/// query outranks the contour in the direction of p.
inline bool strictly_inside(const DualLine& lq, Point p) noexcept {
    return lq.a1 * p.x + lq.a2 * p.y > lq.tau;
}

HullSearchResult hull_search(const KPolygonIndex& index, const DualLine& lq);

/// Crossings of lq with the contour between hull[edge] and hull[edge+1],
/// in ascending direction. Throws DomainError for an invalid edge.
std::vector<BoundaryCrossing> concavity_scan(const KPolygonIndex& index, std::size_t edge, const DualLine& lq);

/// Throws DomainError for non-positive attributes.
MrtopResult mrtop_query(const KPolygonIndex& index, const DataTuple& q, const QueryOptions& options = {});

/// Throws TauMismatchError unless lq was built with the index's tau.
MrtopResult mrtop_query(const KPolygonIndex& index, const DualLine& lq, const QueryOptions& options = {});

/// Coalesces overlapping intervals and intervals that share an endpoint
/// (within 1e-12 rad); drops empty ones. Input must be sorted by lower end.
std::vector<AngularInterval> merge_adjacent(std::span<const AngularInterval> intervals);

/// One result line: "id;lo,hi;lo,hi" with 12 significant digits, where an
/// interval with a closed end carries a third field "[)", "(]" or "[]".
/// An empty result is "id;".
std::string format_result(const TupleId& id, std::span<const AngularInterval> intervals);

struct ResultLine {
    TupleId id;
    std::vector<AngularInterval> intervals;
};

/// Inverse of format_result. Throws DomainError on malformed text.
ResultLine parse_result_line(std::string_view line);

}  // namespace mrtop
