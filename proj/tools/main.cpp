#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "mrtop/dataset.hpp"
#include "mrtop/index_io.hpp"

using namespace mrtop;
using namespace mrtop::cli;

namespace {

/// Runs `f` against the file named by `path`, or stdout when it is empty.
template <typename F>
void with_output(const std::string& path, F&& f) {
    if (path.empty()) {
        f(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw CommandError(Stage::usage, "cannot write " + path);
    }
    f(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximal reverse top-k queries over the k-polygon index"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string mode = "index";
    std::string k_range = "1..4";
    std::string dist = "uniform";
    std::size_t n = 1000;
    std::string queries_out;

    auto add_k = [&](CLI::App* sub) {
        sub->add_option("--k", cfg.k, "Depth k")->check(CLI::PositiveNumber);
    };
    auto add_tau = [&](CLI::App* sub) {
        sub->add_option("--tau", cfg.tau, "Dual transform constant")
            ->check(CLI::PositiveNumber)
            ->each([&](const std::string&) { cfg.tau_given = true; });
    };

    auto* build = app.add_subcommand("build", "Build a k-polygon index file from a CSV relation");
    build->add_option("--input", cfg.input, "Relation CSV")->required();
    build->add_option("--out", cfg.out, "Index file to write")->required();
    add_k(build);
    add_tau(build);

    auto* batch = app.add_subcommand("batch", "Answer a file of queries");
    batch->add_option("--queries", cfg.queries, "Query CSV")->required();
    batch->add_option("--index", cfg.index, "Index file (mode=index)");
    batch->add_option("--input", cfg.input, "Relation CSV (baselines, or index built on the fly)");
    batch->add_option("--mode", mode, "index, wang or oracle");
    batch->add_option("--strict", cfg.strict, "Scan every pocket between inside hull vertices");
    batch->add_option("--shuffle", cfg.shuffle, "Shuffle the relation with this seed before baselines");
    batch->add_flag("--presort", cfg.presort, "Sort the relation by a2 descending before baselines");
    batch->add_option("--threads", cfg.threads, "Query workers")->check(CLI::PositiveNumber);
    batch->add_option("--out", cfg.out, "Result file (stdout if absent)");
    add_k(batch);
    add_tau(batch);

    auto* stats = app.add_subcommand("stats", "CSV of hull and contour sizes per k");
    stats->add_option("--input", cfg.input, "Relation CSV")->required();
    stats->add_option("--k-range", k_range, "e.g. 1..10");
    stats->add_option("--out", cfg.out, "CSV file (stdout if absent)");
    add_tau(stats);

    auto* contours = app.add_subcommand("contours", "SVG drawing of the k-contours");
    contours->add_option("--input", cfg.input, "Relation CSV")->required();
    contours->add_option("--k-range", k_range, "e.g. 1..4");
    contours->add_flag("--hulls", cfg.hulls, "Also draw the convex hulls, dashed");
    contours->add_option("--out", cfg.out, "SVG file (stdout if absent)");
    add_tau(contours);

    auto* generate = app.add_subcommand("generate", "Write a synthetic relation");
    generate->add_option("--n", n, "Tuple count")->check(CLI::PositiveNumber);
    generate->add_option("--dist", dist, "uniform, correlated or anticorrelated");
    generate->add_option("--seed", cfg.seed, "RNG seed");
    generate->add_option("--out", cfg.out, "CSV file (stdout if absent)");

    auto* prepare = app.add_subcommand("prepare", "Scale a relation into (0,1] and perturb it into general position");
    prepare->add_option("--input", cfg.input, "Relation CSV")->required();
    prepare->add_option("--out", cfg.out, "Prepared CSV")->required();
    prepare->add_option("--queries", cfg.queries, "Query CSV to scale with the same factors");
    prepare->add_option("--queries-out", queries_out, "Scaled query CSV");

    auto* exporter = app.add_subcommand("export", "Dump an index file as JSON");
    exporter->add_option("--index", cfg.index, "Index file")->required();
    exporter->add_option("--out", cfg.out, "JSON file (stdout if absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_code(Stage::usage);
    }

    try {
        if (build->parsed()) {
            cmd_build(cfg, std::cout);
        } else if (batch->parsed()) {
            cfg.mode = parse_mode(mode);
            with_output(cfg.out, [&](std::ostream& out) { cmd_batch(cfg, out, std::cerr); });
        } else if (stats->parsed()) {
            cfg.k_range = parse_k_range(k_range);
            with_output(cfg.out, [&](std::ostream& out) { cmd_stats(cfg, out); });
        } else if (contours->parsed()) {
            cfg.k_range = parse_k_range(k_range);
            with_output(cfg.out, [&](std::ostream& out) { cmd_contours(cfg, out); });
        } else if (generate->parsed()) {
            Distribution d{};
            try {
                d = parse_distribution(dist);
            } catch (const std::exception& e) {
                throw CommandError(Stage::usage, e.what());
            }
            const Dataset data = gen_synthetic(n, d, cfg.seed);
            with_output(cfg.out, [&](std::ostream& out) { write_csv(out, data); });
        } else if (prepare->parsed()) {
            if (cfg.queries.empty() != queries_out.empty()) {
                throw CommandError(Stage::usage, "--queries and --queries-out go together");
            }
            Dataset raw;
            Dataset queries;
            try {
                raw = load_csv_file(cfg.input);
                if (!cfg.queries.empty()) {
                    queries = load_csv_file(cfg.queries);
                }
            } catch (const std::exception& e) {
                throw CommandError(Stage::ingest, e.what());
            }
            const UnitScale scale = fit_unit_scale(raw);
            write_csv_file(cfg.out, preprocess(raw));
            if (!cfg.queries.empty()) {
                for (auto& q : queries.tuples) {
                    q = scale.apply(q);
                }
                write_csv_file(queries_out, queries);
            }
        } else if (exporter->parsed()) {
            KPolygonIndex index;
            try {
                index = load_index(cfg.index);
            } catch (const std::exception& e) {
                throw CommandError(Stage::ingest, e.what());
            }
            with_output(cfg.out, [&](std::ostream& out) { out << export_json(index) << '\n'; });
        }
    } catch (const CommandError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.stage());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
