#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "mrtop/baselines.hpp"
#include "mrtop/errors.hpp"
#include "mrtop/index_io.hpp"

namespace mrtop::cli {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double cpu_ms() {
    return 1000.0 * static_cast<double>(std::clock()) / CLOCKS_PER_SEC;
}

template <typename F>
auto at_stage(Stage stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const CommandError&) {
        throw;
    } catch (const std::exception& e) {
        throw CommandError(stage, e.what());
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw CommandError(Stage::usage, what);
    }
}

std::vector<KPolygonIndex> build_range(const RunConfig& cfg) {
    require(!cfg.input.empty(), "--input is required");
    const Dataset d = load_relation(cfg.input);
    return at_stage(Stage::build, [&] {
        std::vector<KPolygonIndex> out;
        for (std::uint32_t k = cfg.k_range.first; k <= cfg.k_range.last; ++k) {
            out.push_back(build_index(d.tuples, k, cfg.tau).index);
        }
        return out;
    });
}

}  // namespace

int exit_code(Stage stage) noexcept {
    switch (stage) {
        case Stage::usage: return 2;
        case Stage::ingest: return 3;
        case Stage::build: return 4;
        case Stage::query: return 5;
    }
    return 1;
}

Mode parse_mode(const std::string& name) {
    if (name == "index") {
        return Mode::index;
    }
    if (name == "wang") {
        return Mode::wang;
    }
    if (name == "oracle") {
        return Mode::oracle;
    }
    throw CommandError(Stage::usage, "unknown mode '" + name + "' (index, wang, oracle)");
}

KRange parse_k_range(const std::string& text) {
    auto number = [&](const std::string& s) {
        std::size_t used = 0;
        long value = -1;
        try {
            value = std::stol(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || value < 1) {
            throw CommandError(Stage::usage, "bad k range '" + text + "'");
        }
        return static_cast<std::uint32_t>(value);
    };
    KRange r;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        r.first = number(text.substr(0, dots));
        r.last = number(text.substr(dots + 2));
    } else if (const auto dash = text.find('-'); dash != std::string::npos && dash > 0) {
        r.first = number(text.substr(0, dash));
        r.last = number(text.substr(dash + 1));
    } else {
        r.first = r.last = number(text);
    }
    if (r.last < r.first) {
        throw CommandError(Stage::usage, "empty k range '" + text + "'");
    }
    return r;
}

Dataset load_relation(const std::string& path) {
    return at_stage(Stage::ingest, [&] { return perturb_general_position(load_csv_file(path)); });
}

BuildReport cmd_build(const RunConfig& cfg, std::ostream& report) {
    require(!cfg.input.empty(), "--input is required");
    require(!cfg.out.empty(), "--out (index file) is required");
    const Dataset d = load_relation(cfg.input);

    const auto start = Clock::now();
    const BuildResult built = at_stage(Stage::build, [&] { return build_index(d.tuples, cfg.k, cfg.tau); });
    BuildReport r;
    r.build_ms = ms_since(start);
    r.n = built.input_size;
    r.candidates = built.swept_lines;
    r.hull = built.index.hull.size();
    r.vertices = built.index.vertex_count();
    at_stage(Stage::build, [&] {
        save_index(built.index, cfg.out);
        return 0;
    });

    report << "n=" << r.n << " skyband=" << r.candidates << " hull=" << r.hull << " vertices=" << r.vertices
           << " build_ms=" << r.build_ms << '\n';
    return r;
}

BatchReport cmd_batch(const RunConfig& cfg, std::ostream& results, std::ostream& report) {
    require(!cfg.queries.empty(), "--queries is required");
    BatchReport r;

    auto start = Clock::now();
    const Dataset queries = at_stage(Stage::ingest, [&] { return load_csv_file(cfg.queries); });
    std::optional<KPolygonIndex> index;
    Dataset relation;
    if (cfg.mode == Mode::index && !cfg.index.empty()) {
        index = at_stage(Stage::ingest, [&] { return load_index(cfg.index); });
        if (cfg.tau_given && cfg.tau != index->tau) {
            throw CommandError(Stage::query, "--tau differs from the tau stored in the index");
        }
    } else {
        require(!cfg.input.empty(), "--input (or --index in index mode) is required");
        relation = load_relation(cfg.input);
        if (cfg.presort) {
            std::stable_sort(relation.tuples.begin(), relation.tuples.end(),
                             [](const DataTuple& a, const DataTuple& b) { return a.a2 > b.a2; });
        }
        if (cfg.shuffle) {
            std::mt19937_64 rng(*cfg.shuffle);
            std::shuffle(relation.tuples.begin(), relation.tuples.end(), rng);
        }
    }
    r.load_ms = ms_since(start);

    if (cfg.mode == Mode::index && !index) {
        start = Clock::now();
        index = at_stage(Stage::build, [&] { return build_index(relation.tuples, cfg.k, cfg.tau).index; });
        r.build_ms = ms_since(start);
    }

    const QueryOptions options{cfg.strict ? QueryMode::strict : QueryMode::hull_only};
    std::vector<std::vector<AngularInterval>> answers(queries.tuples.size());
    auto answer = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const DataTuple& q = queries.tuples[i];
            switch (cfg.mode) {
                case Mode::index: answers[i] = mrtop_query(*index, q, options).intervals; break;
                case Mode::wang: answers[i] = wang_mrtop(relation.tuples, q, cfg.k, cfg.tau).intervals; break;
                case Mode::oracle: answers[i] = oracle_mrtop(relation.tuples, q, cfg.k).intervals; break;
            }
        }
    };

    const double cpu_start = cpu_ms();
    start = Clock::now();
    at_stage(Stage::query, [&] {
        const std::size_t n = queries.tuples.size();
        const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, n));
        if (workers == 1) {
            answer(0, n);
        } else {
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    try {
                        answer(n * w / workers, n * (w + 1) / workers);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) {
                t.join();
            }
            for (const auto& e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
        }
        return 0;
    });
    r.query_wall_ms = ms_since(start);
    r.query_cpu_ms = cpu_ms() - cpu_start;
    r.queries = queries.tuples.size();

    for (std::size_t i = 0; i < answers.size(); ++i) {
        results << format_result(queries.tuples[i].id, answers[i]) << '\n';
    }
    report << "queries=" << r.queries << " load_ms=" << r.load_ms << " build_ms=" << r.build_ms
           << " query_wall_ms=" << r.query_wall_ms << " query_cpu_ms=" << r.query_cpu_ms << '\n';
    return r;
}

std::vector<SizeRow> cmd_stats(const RunConfig& cfg, std::ostream& csv) {
    std::vector<SizeRow> rows;
    csv << "k,ch,ds,lines\n";
    for (const KPolygonIndex& index : build_range(cfg)) {
        SizeRow row{index.k, index.hull.size(), index.vertex_count(), index.lines.size()};
        csv << row.k << ',' << row.hull << ',' << row.vertices << ',' << row.lines << '\n';
        rows.push_back(row);
    }
    return rows;
}

void cmd_contours(const RunConfig& cfg, std::ostream& svg) {
    svg << render_contours_svg(build_range(cfg), cfg.hulls);
}

std::string render_contours_svg(const std::vector<KPolygonIndex>& contours, bool hulls) {
    constexpr double kSize = 600.0;
    constexpr double kMargin = 40.0;
    static constexpr const char* kStrokes[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                               "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    double extent = 0.0;
    for (const auto& index : contours) {
        for (const auto& v : index.chain()) {
            extent = std::max({extent, v.point.x, v.point.y});
        }
    }
    if (extent <= 0.0) {
        extent = 1.0;
    }
    const double scale = (kSize - 2 * kMargin) / extent;
    auto map = [&](Point p) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", kMargin + p.x * scale, kSize - kMargin - p.y * scale);
        return std::string(buf);
    };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
        << "  <line x1=\"" << kMargin << "\" y1=\"" << kSize - kMargin << "\" x2=\"" << kSize - kMargin / 2
        << "\" y2=\"" << kSize - kMargin << "\" stroke=\"black\"/>\n"
        << "  <line x1=\"" << kMargin << "\" y1=\"" << kSize - kMargin << "\" x2=\"" << kMargin << "\" y2=\""
        << kMargin / 2 << "\" stroke=\"black\"/>\n"
        << "  <circle cx=\"" << kMargin << "\" cy=\"" << kSize - kMargin << "\" r=\"3\" fill=\"black\"/>\n";
    for (std::size_t i = 0; i < contours.size(); ++i) {
        const auto& index = contours[i];
        const char* stroke = kStrokes[i % std::size(kStrokes)];
        out << "  <polyline class=\"contour\" data-k=\"" << index.k << "\" fill=\"none\" stroke=\"" << stroke
            << "\" points=\"";
        for (const auto& v : index.chain()) {
            out << map(v.point) << ' ';
        }
        out << "\"/>\n";
        if (hulls) {
            out << "  <polyline class=\"hull\" data-k=\"" << index.k << "\" fill=\"none\" stroke=\"" << stroke
                << "\" stroke-dasharray=\"4 3\" points=\"";
            for (const auto& v : index.hull) {
                out << map(v.point) << ' ';
            }
            out << "\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace mrtop::cli
