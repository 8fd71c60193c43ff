#pragma once

// Binary index container, little-endian, reals as IEEE-754 binary64:
//
//   "KPLY" | u32 version | u32 k | f64 tau
//   u64 hull count | u64 concavity vertex count | u64 line count
//   hull vertex records         (f64 x, f64 y, u32 left line, u32 right line)
//   per hull edge: u32 length, then that many vertex records
//   line records                (f64 slope, y-intercept, x-intercept, a1, a2, tau;
//                                u32 id length, id bytes)

#include <cstdint>
#include <iosfwd>
#include <string>

#include "mrtop/kpolygon.hpp"

namespace mrtop {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

void serialize_index(const KPolygonIndex& index, std::ostream& out);

/// Throws IndexFormatError: bad_magic, version_mismatch, truncated, or
/// invariant_violation when the decoded index fails validate().
KPolygonIndex deserialize_index(std::istream& in);

void save_index(const KPolygonIndex& index, const std::string& path);
KPolygonIndex load_index(const std::string& path);

/// Pretty-printed JSON with the same content as the binary container.
std::string export_json(const KPolygonIndex& index);

}  // namespace mrtop
