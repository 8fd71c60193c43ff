#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mrtop/geometry.hpp"

namespace mrtop {

struct Dataset {
    std::vector<DataTuple> tuples;
    /// Source path or generator descriptor, e.g. "synthetic:uniform:n=100:seed=7".
    std::string provenance;
    bool preprocessed = false;
};

/// Parses "id,a1,a2" rows. A first row whose numeric fields do not parse is
/// taken as a header. Throws IngestError with the 1-based row number.
Dataset load_csv(std::istream& in, std::string provenance = "stream");
Dataset load_csv_file(const std::string& path);

/// Writes "id,a1,a2" rows with round-trip precision, no header.
void write_csv(std::ostream& out, const Dataset& d);
void write_csv_file(const std::string& path, const Dataset& d);

/// Per-attribute affine map a -> (a + 1) / (max + 1).
struct UnitScale {
    double max_a1 = 0.0;
    double max_a2 = 0.0;

    DataTuple apply(const DataTuple& v) const;
};

/// Scale fitted to d; throws DomainError when d is empty.
UnitScale fit_unit_scale(const Dataset& d);

/// Maps every attribute into (0, 1]; the per-attribute maximum becomes 1.
Dataset scale_unit(const Dataset& d);

/// Repeatedly adds eps to values already taken in the same attribute, in
/// input order, until each attribute is duplicate-free. Results may exceed 1.
Dataset perturb_general_position(const Dataset& d, double eps = 1e-8);

/// scale_unit followed by perturb_general_position; marks the result preprocessed.
Dataset preprocess(const Dataset& d, double eps = 1e-8);

enum class Distribution { uniform, correlated, anticorrelated };

Distribution parse_distribution(std::string_view name);
std::string_view to_string(Distribution dist) noexcept;

/// Deterministic synthetic relation in (0, 1], already in general position.
/// Correlated data scatter around the diagonal, anticorrelated data around
/// the anti-diagonal.
Dataset gen_synthetic(std::size_t n, Distribution dist, std::uint64_t seed);

}  // namespace mrtop
