#pragma once

// Reference answers for reverse top-k queries that do not use the index:
// a literal breakpoint oracle and a dual-segment splitting baseline.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mrtop/geometry.hpp"
#include "mrtop/query.hpp"

namespace mrtop {

/// Tangent t >= 0 of a direction where `other` ties the query's score.
struct Breakpoint {
    double t = 0.0;
    std::size_t other = 0;  // row in the relation
};

/// Every finite non-negative t = (v1 - q1) / (q2 - v2), sorted ascending.
std::vector<Breakpoint> breakpoints(std::span<const DataTuple> relation, const DataTuple& q);

/// Brute force: probe the rank between every pair of consecutive
/// breakpoints, beyond the last one, and at both axes.
MrtopResult oracle_mrtop(std::span<const DataTuple> relation, const DataTuple& q, std::uint32_t k);

/// Splits the query line at each tuple's dual in input order, counting how
/// many duals pass nearer the origin on each piece and dropping pieces
/// once that count reaches k. The output is merged into maximal intervals.
MrtopResult wang_mrtop(std::span<const DataTuple> relation, const DataTuple& q, std::uint32_t k, double tau);

}  // namespace mrtop
