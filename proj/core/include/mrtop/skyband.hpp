#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mrtop/geometry.hpp"

namespace mrtop {

/// A subset of a relation, identified by row position (ids may repeat).
struct SkybandSet {
    std::vector<std::size_t> rows;  // ascending
    bool exact = false;

    bool contains(std::size_t row) const { return std::binary_search(rows.begin(), rows.end(), row); }
    std::size_t size() const noexcept { return rows.size(); }
};

/// Tuples strictly dominated (larger in both attributes) by fewer than k
/// others. Quadratic; intended as a reference.
SkybandSet exact_skyband(std::span<const DataTuple> relation, std::uint32_t k);

/// Rows of the k highest tuples by a1 (ties: higher a2, then id, then row).
std::vector<std::size_t> top_by_a1(std::span<const DataTuple> relation, std::uint32_t k);
/// Rows of the k highest tuples by a2 (ties: higher a1, then id, then row).
std::vector<std::size_t> top_by_a2(std::span<const DataTuple> relation, std::uint32_t k);

/// Tuples whose dual reaches the closed k-polygon built on the k best tuples
/// per axis, plus those k-best tuples themselves. Contains every tuple that
/// ranks in the top-k of the rest of the relation for some direction.
SkybandSet contour_candidates(std::span<const DataTuple> relation, std::uint32_t k, double tau);

/// Every tuple dominated by fewer than k of the contour_candidates(). This
/// contains the exact k-skyband (and the k best tuples per axis) and drops
/// candidates that are too deep to reach the contour. Requires |relation| >= k.
SkybandSet approximate_skyband(std::span<const DataTuple> relation, std::uint32_t k, double tau);

}  // namespace mrtop
