#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrtop/dataset.hpp"
#include "mrtop/kpolygon.hpp"
#include "mrtop/query.hpp"

namespace mrtop::cli {

enum class Stage { usage, ingest, build, query };

/// Exit codes: 0 success, 1 unexpected failure, then one per stage.
int exit_code(Stage stage) noexcept;

class CommandError : public std::runtime_error {
public:
    CommandError(Stage stage, const std::string& what) : std::runtime_error(what), stage_(stage) {}
    Stage stage() const noexcept { return stage_; }

private:
    Stage stage_;
};

enum class Mode { index, wang, oracle };

Mode parse_mode(const std::string& name);

struct KRange {
    std::uint32_t first = 1;
    std::uint32_t last = 1;
};

/// "3", "1..10" or "1-10". Empty or inverted ranges are usage errors.
KRange parse_k_range(const std::string& text);

struct RunConfig {
    std::string input;
    std::string queries;
    std::string index;
    std::string out;
    std::uint32_t k = 1;
    double tau = 0.5;
    bool tau_given = false;
    Mode mode = Mode::index;
    bool strict = true;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> shuffle;
    bool presort = false;
    std::size_t threads = 1;
    KRange k_range;
    bool hulls = false;
};

/// Loads a CSV relation and puts it in general position; ingest errors
/// become CommandError(Stage::ingest).
Dataset load_relation(const std::string& path);

struct BuildReport {
    std::size_t n = 0;
    std::size_t candidates = 0;
    std::size_t hull = 0;
    std::size_t vertices = 0;
    double build_ms = 0.0;
};

BuildReport cmd_build(const RunConfig& cfg, std::ostream& report);

struct BatchReport {
    std::size_t queries = 0;
    double load_ms = 0.0;
    double build_ms = 0.0;
    double query_wall_ms = 0.0;
    double query_cpu_ms = 0.0;
};

/// Writes one result line per query, in file order, to `results`; timing
/// goes to `report`. Result serialization is excluded from the timings.
BatchReport cmd_batch(const RunConfig& cfg, std::ostream& results, std::ostream& report);

struct SizeRow {
    std::uint32_t k = 0;
    std::size_t hull = 0;
    std::size_t vertices = 0;
    std::size_t lines = 0;
};

/// CSV "k,ch,ds,lines": hull size, total contour vertices and contributing
/// lines of the index for every k in the range.
std::vector<SizeRow> cmd_stats(const RunConfig& cfg, std::ostream& csv);

/// SVG 1.1 drawing of the contours for every k in the range.
void cmd_contours(const RunConfig& cfg, std::ostream& svg);

/// Renders pre-built contours; one polyline per index (plus one dashed
/// hull polyline each when `hulls` is set).
std::string render_contours_svg(const std::vector<KPolygonIndex>& contours, bool hulls);

}  // namespace mrtop::cli
