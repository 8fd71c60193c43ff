#pragma once

// The k-polygon index: the k-th depth contour of the arrangement of dual
// lines, restricted to directions [0, pi/2] and stored as a convex hull
// array plus one concavity list per hull edge.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mrtop/geometry.hpp"

namespace mrtop {

/// Line slot of the x-axis side of the first vertex and the y-axis side of
/// the last vertex.
inline constexpr std::uint32_t kAxisLine = 0xffffffffu;

/// A contour vertex. `left_line` owns the edge arriving at the vertex (in
/// anti-clockwise order) and `right_line` the edge leaving it; both are
/// slots in KPolygonIndex::lines.
struct PolygonVertex {
    Point point;
    std::uint32_t left_line = kAxisLine;
    std::uint32_t right_line = kAxisLine;

    double theta() const noexcept { return polar_angle(point); }

    friend bool operator==(const PolygonVertex&, const PolygonVertex&) = default;
};

struct KPolygonIndex {
    std::uint32_t k = 0;
    double tau = 0.0;
    /// Hull vertices anti-clockwise from the x-axis end to the y-axis end.
    std::vector<PolygonVertex> hull;
    /// concavities[i] holds the contour vertices strictly between hull[i]
    /// and hull[i + 1], in angular order.
    std::vector<std::vector<PolygonVertex>> concavities;
    /// Every line owning at least one contour edge.
    std::vector<DualLine> lines;

    /// Number of distinct contour vertices (|DS|).
    std::size_t vertex_count() const noexcept;

    /// The whole contour, hull and concavity vertices interleaved.
    std::vector<PolygonVertex> chain() const;

    /// Line owning the edge that leaves `v`; v must not be the last vertex.
    const DualLine& edge_line(const PolygonVertex& v) const { return lines.at(v.right_line); }

    friend bool operator==(const KPolygonIndex&, const KPolygonIndex&) = default;
};

/// Throws IndexFormatError(invariant_violation) naming the first broken
/// structural invariant.
void validate(const KPolygonIndex& index);

/// Orders lines by ascending x-intercept, i.e. the order in which a ray just
/// above the x-axis meets them. Equal intercepts raise GeneralPositionError.
std::vector<DualLine> sort_by_x_intercept(std::vector<DualLine> lines);

struct SweepStats {
    std::size_t events_pushed = 0;
    std::size_t events_processed = 0;
    std::size_t stale_events = 0;
};

struct SweepOptions {
    /// Re-checks after every event that each adjacent pair with a pending
    /// forward crossing has that crossing queued. O(n) per event.
    bool check_event_queue = false;
    SweepStats* stats = nullptr;
};

/// Radial plane sweep from the positive x-axis to the positive y-axis over
/// lines already ordered by sort_by_x_intercept.
KPolygonIndex build_polygon(std::span<const DualLine> sorted_lines, std::uint32_t k, double tau,
                            const SweepOptions& options = {});

struct BuildOptions {
    /// Sweep only the skyband approximation instead of the whole relation.
    bool prune_with_skyband = true;
    SweepOptions sweep;
};

struct BuildResult {
    KPolygonIndex index;
    std::size_t input_size = 0;
    std::size_t swept_lines = 0;
};

/// Full pipeline: skyband approximation, dual transform, sort, sweep.
BuildResult build_index(std::span<const DataTuple> relation, std::uint32_t k, double tau,
                        const BuildOptions& options = {});

}  // namespace mrtop
