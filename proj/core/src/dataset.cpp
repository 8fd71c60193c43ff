#include "mrtop/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <unordered_set>

#include "mrtop/errors.hpp"

namespace mrtop {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool parse_real(std::string_view field, double& out) {
    field = trim(field);
    if (field.empty()) {
        return false;
    }
    const std::string owned(field);
    char* end = nullptr;
    out = std::strtod(owned.c_str(), &end);
    return end == owned.c_str() + owned.size();
}

}  // namespace

Dataset load_csv(std::istream& in, std::string provenance) {
    Dataset d;
    d.provenance = std::move(provenance);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string_view text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto c1 = text.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
        if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
            throw IngestError(row, "expected three fields 'id,a1,a2'");
        }
        const std::string_view id = trim(text.substr(0, c1));
        double a1 = 0.0;
        double a2 = 0.0;
        const bool ok1 = parse_real(text.substr(c1 + 1, c2 - c1 - 1), a1);
        const bool ok2 = parse_real(text.substr(c2 + 1), a2);
        if (!ok1 || !ok2) {
            if (d.tuples.empty() && row == 1) {
                continue;  // header
            }
            throw IngestError(row, "non-numeric attribute");
        }
        if (!std::isfinite(a1) || !std::isfinite(a2)) {
            throw IngestError(row, "non-finite attribute");
        }
        if (!(a1 > 0.0) || !(a2 > 0.0)) {
            throw IngestError(row, "attributes must be positive");
        }
        d.tuples.push_back({std::string(id), a1, a2});
    }
    return d;
}

Dataset load_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    return load_csv(in, path);
}

void write_csv(std::ostream& out, const Dataset& d) {
    char buf[96];
    for (const DataTuple& v : d.tuples) {
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", v.a1, v.a2);
        out << v.id << buf;
    }
}

void write_csv_file(const std::string& path, const Dataset& d) {
    std::ofstream out(path);
    if (!out) {
        throw Error("cannot write '" + path + "'");
    }
    write_csv(out, d);
}

DataTuple UnitScale::apply(const DataTuple& v) const {
    return {v.id, (v.a1 + 1.0) / (max_a1 + 1.0), (v.a2 + 1.0) / (max_a2 + 1.0)};
}

UnitScale fit_unit_scale(const Dataset& d) {
    if (d.tuples.empty()) {
        throw DomainError("cannot scale an empty dataset");
    }
    UnitScale s{d.tuples.front().a1, d.tuples.front().a2};
    for (const DataTuple& v : d.tuples) {
        if (!(v.a1 > 0.0) || !(v.a2 > 0.0)) {
            throw DomainError("tuple '" + v.id + "' has a non-positive attribute");
        }
        s.max_a1 = std::max(s.max_a1, v.a1);
        s.max_a2 = std::max(s.max_a2, v.a2);
    }
    return s;
}

Dataset scale_unit(const Dataset& d) {
    const UnitScale s = fit_unit_scale(d);
    Dataset out;
    out.provenance = d.provenance;
    out.tuples.reserve(d.tuples.size());
    for (const DataTuple& v : d.tuples) {
        out.tuples.push_back(s.apply(v));
    }
    return out;
}

Dataset perturb_general_position(const Dataset& d, double eps) {
    if (!(eps > 0.0)) {
        throw DomainError("perturbation step must be positive");
    }
    Dataset out = d;
    auto spread = [&](double DataTuple::*attr) {
        std::unordered_set<double> taken;
        taken.reserve(out.tuples.size() * 2);
        for (DataTuple& v : out.tuples) {
            double value = v.*attr;
            while (!taken.insert(value).second) {
                value += eps;
            }
            v.*attr = value;
        }
    };
    spread(&DataTuple::a1);
    spread(&DataTuple::a2);
    return out;
}

Dataset preprocess(const Dataset& d, double eps) {
    Dataset out = perturb_general_position(scale_unit(d), eps);
    out.preprocessed = true;
    return out;
}

Distribution parse_distribution(std::string_view name) {
    if (name == "uniform") {
        return Distribution::uniform;
    }
    if (name == "correlated") {
        return Distribution::correlated;
    }
    if (name == "anticorrelated") {
        return Distribution::anticorrelated;
    }
    throw DomainError("unknown distribution '" + std::string(name) + "'");
}

std::string_view to_string(Distribution dist) noexcept {
    switch (dist) {
        case Distribution::uniform: return "uniform";
        case Distribution::correlated: return "correlated";
        case Distribution::anticorrelated: return "anticorrelated";
    }
    return "uniform";
}

Dataset gen_synthetic(std::size_t n, Distribution dist, std::uint64_t seed) {
    if (n < 1) {
        throw DomainError("synthetic relations need at least one tuple");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.12);
    // 1 - U[0, 1) lies in (0, 1].
    auto draw_unit = [&] { return 1.0 - unit(rng); };
    auto around = [&](double centre) {
        while (true) {
            const double v = centre + noise(rng);
            if (v > 0.0 && v <= 1.0) {
                return v;
            }
        }
    };

    Dataset d;
    d.tuples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = draw_unit();
        double y = 0.0;
        switch (dist) {
            case Distribution::uniform: y = draw_unit(); break;
            case Distribution::correlated: y = around(x); break;
            case Distribution::anticorrelated: y = around(1.0 - x); break;
        }
        d.tuples.push_back({"t" + std::to_string(i), x, y});
    }
    d = perturb_general_position(d);
    d.preprocessed = true;
    d.provenance = "synthetic:" + std::string(to_string(dist)) + ":n=" + std::to_string(n) +
                   ":seed=" + std::to_string(seed);
    return d;
}

}  // namespace mrtop
