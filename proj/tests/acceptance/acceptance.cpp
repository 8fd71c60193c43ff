// Acceptance checks. Each criterion prints one PASS/FAIL line; with a
// criterion number as argument only that criterion runs. The exit status is
// non-zero when any executed criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "commands.hpp"
#include "mrtop/baselines.hpp"
#include "mrtop/index_io.hpp"
#include "mrtop/skyband.hpp"
#include "support/oracles.hpp"

using namespace mrtop;
namespace fs = std::filesystem;

namespace {

constexpr Distribution kDists[] = {Distribution::uniform, Distribution::correlated, Distribution::anticorrelated};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::uint64_t seed_of(std::size_t n, std::uint32_t k, Distribution dist, std::uint64_t round) {
    return 1000003 * round + 1000 * n + 10 * k + static_cast<std::uint64_t>(dist);
}

/// Five queries per dataset: three drawn from the same distribution and two
/// jittered copies of k-skyband tuples, so that most answers are non-empty.
std::vector<DataTuple> queries_for(const std::vector<DataTuple>& d, std::uint32_t k, Distribution dist,
                                   std::uint64_t seed) {
    std::vector<DataTuple> qs = gen_synthetic(3, dist, seed ^ 0x9e3779b97f4a7c15ull).tuples;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.97, 1.03);
    const SkybandSet band = exact_skyband(d, k + 2);
    for (int i = 0; i < 2; ++i) {
        const DataTuple& v = d[band.rows[rng() % band.rows.size()]];
        qs.push_back({"j" + std::to_string(i), v.a1 * jitter(rng), v.a2 * jitter(rng)});
    }
    for (std::size_t i = 0; i < qs.size(); ++i) {
        qs[i].id = "q" + std::to_string(i);
    }
    return qs;
}

/// One randomized query case of the oracle-equivalence sweep.
struct Case {
    std::size_t n;
    std::uint32_t k;
    Distribution dist;
    DataTuple q;
    std::vector<AngularInterval> index;
    std::vector<AngularInterval> oracle;
    std::vector<AngularInterval> wang;
};

struct Sweep {
    std::vector<Case> cases;
    std::size_t indexes = 0;
    std::size_t pocket_violations = 0;
    std::size_t largest_pocket_excess = 0;
};

/// Criterion 1's randomized cases, shared by criteria 2, 3 and 9.
const Sweep& sweep() {
    static const Sweep s = [] {
        Sweep out;
        for (std::uint64_t round = 0; round < 6; ++round) {
            for (std::size_t n : {50u, 500u, 2000u}) {
                for (Distribution dist : kDists) {
                    for (std::uint32_t k = 1; k <= 10; ++k) {
                        const std::uint64_t seed = seed_of(n, k, dist, round);
                        const auto d = gen_synthetic(n, dist, seed).tuples;
                        const KPolygonIndex index = build_index(d, k, 0.5).index;
                        ++out.indexes;
                        for (const auto& pocket : index.concavities) {
                            if (pocket.size() > 2 * k - 1) {
                                ++out.pocket_violations;
                            }
                        }
                        for (const auto& q : queries_for(d, k, dist, seed + 7)) {
                            out.cases.push_back({n, k, dist, q, mrtop_query(index, q).intervals,
                                                 oracle_mrtop(d, q, k).intervals, wang_mrtop(d, q, k, 0.5).intervals});
                        }
                    }
                }
            }
        }
        return out;
    }();
    return s;
}

std::string describe(const Case& c) {
    std::ostringstream out;
    out.precision(17);
    out << "n=" << c.n << " k=" << c.k << " dist=" << to_string(c.dist) << " q=(" << c.q.a1 << "," << c.q.a2 << ")";
    return out.str();
}

Outcome oracle_equivalence() {
    const Sweep& s = sweep();
    std::size_t bad = 0;
    std::string first;
    std::size_t nonempty = 0;
    for (const auto& c : s.cases) {
        nonempty += !c.oracle.empty();
        const std::string diff = oracle::interval_diff(c.index, c.oracle);
        if (!diff.empty() && bad++ == 0) {
            first = describe(c) + ": " + diff;
        }
    }
    return {s.cases.size() >= 1000 && bad == 0,
            std::to_string(s.cases.size()) + " cases (" + std::to_string(nonempty) + " non-empty), " +
                std::to_string(bad) + " mismatches" + (first.empty() ? "" : "; first: " + first)};
}

Outcome interval_count_bound() {
    std::size_t bad = 0;
    std::size_t most = 0;
    std::string first;
    for (const auto& c : sweep().cases) {
        most = std::max(most, c.index.size());
        if (c.index.size() > 2 && bad++ == 0) {
            first = describe(c) + " has " + std::to_string(c.index.size()) + " intervals, oracle " +
                    std::to_string(c.oracle.size());
        }
    }
    return {bad == 0, std::to_string(bad) + " results with more than 2 intervals (max " + std::to_string(most) + ")" +
                          (first.empty() ? "" : "; first: " + first)};
}

Outcome concavity_bound() {
    const Sweep& s = sweep();
    return {s.pocket_violations == 0, std::to_string(s.indexes) + " indexes, " +
                                          std::to_string(s.pocket_violations) + " pockets longer than 2k-1"};
}

Outcome skyband_recall() {
    std::size_t misses = 0;
    std::size_t datasets = 0;
    std::size_t exact_total = 0;
    std::size_t approx_total = 0;
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 20 + rng() % 481;
        const std::uint32_t k = 1 + i % 10;
        const auto d = gen_synthetic(n, kDists[i % 3], rng()).tuples;
        const SkybandSet exact = exact_skyband(d, k);
        const SkybandSet approx = approximate_skyband(d, k, 0.5);
        for (std::size_t row : exact.rows) {
            misses += !approx.contains(row);
        }
        exact_total += exact.size();
        approx_total += approx.size();
        ++datasets;
    }
    return {misses == 0, std::to_string(datasets) + " datasets, " + std::to_string(misses) + " misses (exact " +
                             std::to_string(exact_total) + " rows, approximation " + std::to_string(approx_total) +
                             ")"};
}

Outcome tau_invariance() {
    std::size_t bad = 0;
    std::size_t compared = 0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 100 + 40 * i;
        const std::uint32_t k = 1 + i % 10;
        const Distribution dist = kDists[i % 3];
        const auto d = gen_synthetic(n, dist, 777 + i).tuples;
        const DataTuple q = queries_for(d, k, dist, 999 + i)[3 + i % 2];
        const auto reference = mrtop_query(build_index(d, k, 0.5).index, q).intervals;
        for (double tau : {0.25, 1.0, 1.5}) {
            const auto other = mrtop_query(build_index(d, k, tau).index, q).intervals;
            bad += !oracle::interval_diff(other, reference).empty();
            ++compared;
        }
    }
    return {bad == 0, "50 cases x 4 tau values, " + std::to_string(bad) + " of " + std::to_string(compared) +
                          " comparisons differ"};
}

Outcome structure_size(const fs::path& dir) {
    std::size_t ds_bad = 0;
    std::size_t edge_bad = 0;
    std::string first;
    double worst_ratio = 0.0;
    for (Distribution dist : kDists) {
        cli::RunConfig cfg;
        cfg.input = (dir / ("stats_" + std::string(to_string(dist)) + ".csv")).string();
        write_csv_file(cfg.input, gen_synthetic(2000, dist, 31));
        cfg.k_range = cli::parse_k_range("1..10");
        std::ostringstream csv;
        for (const auto& row : cli::cmd_stats(cfg, csv)) {
            const std::size_t edges = row.vertices - 1;
            worst_ratio = std::max(worst_ratio, static_cast<double>(row.vertices) /
                                                    static_cast<double>((2 * row.k - 1) * row.hull));
            const bool ds_ok = row.vertices <= (2 * row.k - 1) * row.hull;
            const bool edges_ok = edges <= 2 * row.lines;
            ds_bad += !ds_ok;
            edge_bad += !edges_ok;
            if ((!ds_ok || !edges_ok) && first.empty()) {
                first = std::string(to_string(dist)) + " k=" + std::to_string(row.k) + " ch=" +
                        std::to_string(row.hull) + " ds=" + std::to_string(row.vertices) +
                        " lines=" + std::to_string(row.lines);
            }
        }
    }
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.3f", worst_ratio);
    return {ds_bad == 0 && edge_bad == 0, "30 rows, " + std::to_string(ds_bad) + " with |DS| > (2k-1)|CH| (max ratio " +
                                              ratio + "), " + std::to_string(edge_bad) +
                                              " with edges > 2 x lines" + (first.empty() ? "" : "; first: " + first)};
}

Outcome performance(const fs::path& dir) {
    cli::RunConfig cfg;
    cfg.input = (dir / "perf.csv").string();
    cfg.queries = (dir / "perf_queries.csv").string();
    cfg.out = (dir / "perf.idx").string();
    cfg.k = 10;
    write_csv_file(cfg.input, gen_synthetic(21383, Distribution::uniform, 2011));
    write_csv_file(cfg.queries, gen_synthetic(578, Distribution::uniform, 2009));
    std::ostringstream sink;
    cli::cmd_build(cfg, sink);
    cfg.index = cfg.out;

    // Best of three batch runs; the index is read from disk each time.
    double batch_ms = 1e300;
    std::size_t answered = 0;
    std::size_t nonempty = 0;
    for (int run = 0; run < 3; ++run) {
        std::ostringstream results;
        const cli::BatchReport r = cli::cmd_batch(cfg, results, sink);
        batch_ms = std::min(batch_ms, r.query_wall_ms);
        answered = r.queries;
        std::istringstream lines(results.str());
        nonempty = 0;
        for (std::string line; std::getline(lines, line);) {
            nonempty += line.back() != ';';
        }
    }
    const double index_us = 1000.0 * batch_ms / static_cast<double>(answered);

    const auto d = perturb_general_position(load_csv_file(cfg.input)).tuples;
    const auto qs = load_csv_file(cfg.queries).tuples;
    constexpr std::size_t kOracleQueries = 20;
    const auto start = std::chrono::steady_clock::now();
    std::size_t sink_count = 0;
    for (std::size_t i = 0; i < kOracleQueries; ++i) {
        sink_count += oracle_mrtop(d, qs[i], 10).intervals.size();
    }
    const double oracle_us =
        std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count() / kOracleQueries;
    const double speedup = oracle_us / index_us;

    // For information: the same batch size drawn next to tuples owning contour edges,
    // where most answers are non-empty and pockets get scanned.
    const KPolygonIndex index = load_index(cfg.index);
    std::mt19937_64 rng(578);
    std::uniform_real_distribution<double> jitter(0.97, 1.03);
    std::vector<DataTuple> hard;
    for (std::size_t i = 0; i < 578; ++i) {
        const DualLine& v = index.lines[rng() % index.lines.size()];
        hard.push_back({"h" + std::to_string(i), v.a1 * jitter(rng), v.a2 * jitter(rng)});
    }
    double hard_ms = 1e300;
    std::size_t hard_nonempty = 0;
    for (int run = 0; run < 3; ++run) {
        hard_nonempty = 0;
        const auto t0 = std::chrono::steady_clock::now();
        for (const auto& q : hard) {
            hard_nonempty += !mrtop_query(index, q).empty();
        }
        hard_ms = std::min(hard_ms,
                           std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }

    char detail[384];
    std::snprintf(detail, sizeof detail,
                  "%zu queries (%zu non-empty) in %.3f ms (%.3f us/query), oracle %.1f us/query, speedup %.0fx "
                  "(need >= 100x, < 50 ms); near-contour batch: %zu non-empty in %.3f ms",
                  answered, nonempty, batch_ms, index_us, oracle_us, speedup, hard_nonempty, hard_ms);
    (void)sink_count;
    return {answered == 578 && batch_ms < 50.0 && speedup >= 100.0, detail};
}

Outcome geometry_oracles() {
    std::size_t indexes = 0;
    std::size_t star_bad = 0;
    std::size_t trace_bad = 0;
    std::size_t monotone_bad = 0;
    std::string first;
    for (Distribution dist : kDists) {
        for (std::size_t n : {30u, 100u, 200u}) {
            for (std::uint32_t k = 1; k <= 8; ++k) {
                const auto d = gen_synthetic(n, dist, seed_of(n, k, dist, 17)).tuples;
                const KPolygonIndex index = build_index(d, k, 0.5).index;
                ++indexes;
                if (auto v = oracle::star_violation(index)) {
                    if (star_bad++ == 0 && first.empty()) {
                        first = "star: " + *v;
                    }
                }
                if (const std::size_t m = oracle::trace_mismatches(index, d, 1000); m > 0) {
                    if (trace_bad++ == 0 && first.empty()) {
                        first = "trace: " + std::to_string(m) + " directions";
                    }
                }
            }
            const auto d = gen_synthetic(n, dist, seed_of(n, 0, dist, 18)).tuples;
            std::vector<KPolygonIndex> levels;
            for (std::uint32_t k = 1; k <= 4; ++k) {
                levels.push_back(build_index(d, k, 0.5).index);
            }
            for (int s = 0; s < 1000; ++s) {
                const double theta = kHalfPi * s / 999.0;
                for (std::size_t k = 1; k < levels.size(); ++k) {
                    monotone_bad += !(oracle::contour_distance(levels[k - 1], theta) <
                                      oracle::contour_distance(levels[k], theta));
                }
            }
        }
    }
    return {star_bad + trace_bad + monotone_bad == 0,
            std::to_string(indexes) + " indexes: " + std::to_string(star_bad) + " not star-shaped, " +
                std::to_string(trace_bad) + " trace mismatches, " + std::to_string(monotone_bad) +
                " non-monotone samples" + (first.empty() ? "" : "; first: " + first)};
}

Outcome baseline_reconciliation() {
    std::size_t bad = 0;
    std::string first;
    for (const auto& c : sweep().cases) {
        const std::string diff = oracle::interval_diff(c.wang, c.oracle);
        if (!diff.empty() && bad++ == 0) {
            first = describe(c) + ": " + diff;
        }
    }
    return {bad == 0, std::to_string(sweep().cases.size()) + " cases, " + std::to_string(bad) + " mismatches" +
                          (first.empty() ? "" : "; first: " + first)};
}

}  // namespace

int main(int argc, char** argv) {
    const fs::path dir = fs::temp_directory_path() / ("mrtop_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const std::map<int, std::pair<std::string, std::function<Outcome()>>> criteria{
        {1, {"oracle equivalence", oracle_equivalence}},
        {2, {"at most two intervals per result", interval_count_bound}},
        {3, {"concavity lists hold at most 2k-1 vertices", concavity_bound}},
        {4, {"skyband approximation has perfect recall", skyband_recall}},
        {5, {"results do not depend on tau", tau_invariance}},
        {6, {"structure size bounds", [&] { return structure_size(dir); }}},
        {7, {"query performance", [&] { return performance(dir); }}},
        {8, {"geometry oracles", geometry_oracles}},
        {9, {"baseline reconciliation", baseline_reconciliation}},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        selected.push_back(std::atoi(argv[i]));
    }
    if (selected.empty()) {
        for (const auto& [id, _] : criteria) {
            selected.push_back(id);
        }
    }

    int failures = 0;
    for (int id : selected) {
        const auto it = criteria.find(id);
        if (it == criteria.end()) {
            std::printf("FAIL criterion %d: unknown criterion\n", id);
            ++failures;
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it->second.second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s -- %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, it->second.first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    fs::remove_all(dir);
    return failures == 0 ? 0 : 1;
}
