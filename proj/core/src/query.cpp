#include "mrtop/query.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "mrtop/errors.hpp"

namespace mrtop {

namespace {

double along(const DualLine& lq, Point from, Point to) noexcept {
    return lq.a1 * (to.x - from.x) + lq.a2 * (to.y - from.y);
}

class HullSearch {
public:
    HullSearch(const std::vector<PolygonVertex>& hull, const DualLine& lq, HullSearchResult& out)
        : hull_(hull), lq_(lq), out_(out) {}

    void run() {
        const std::size_t last = hull_.size() - 1;
        out_.inside_at_start = test(0);
        out_.inside_at_end = test(last);
        descend(0, out_.inside_at_start, last, out_.inside_at_end);
        std::sort(out_.edges.begin(), out_.edges.end());
        out_.edges.erase(std::unique(out_.edges.begin(), out_.edges.end()), out_.edges.end());
    }

private:
    bool test(std::size_t i) {
        ++out_.visited;
        return strictly_inside(lq_, hull_[i].point);
    }

    // The score of the query against hull vertices is unimodal along the
    // hull, so each step keeps at most one side unless the line is inside at
    // the midpoint, where each side holds at most one crossing.
    void descend(std::size_t lo, bool lo_inside, std::size_t hi, bool hi_inside) {
        if (hi - lo == 1) {
            out_.edges.push_back(lo);
            return;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        const bool mid_inside = test(mid);
        if (!mid_inside) {
            if (along(lq_, hull_[mid].point, hull_[mid - 1].point) > 0.0) {
                descend(lo, lo_inside, mid, mid_inside);
            } else if (along(lq_, hull_[mid].point, hull_[mid + 1].point) > 0.0) {
                descend(mid, mid_inside, hi, hi_inside);
            }
            return;
        }
        if (!lo_inside) {
            descend(lo, lo_inside, mid, mid_inside);
        }
        if (!hi_inside) {
            descend(mid, mid_inside, hi, hi_inside);
        }
    }

    const std::vector<PolygonVertex>& hull_;
    const DualLine& lq_;
    HullSearchResult& out_;
};

BoundaryCrossing crossing_on_edge(const DualLine& lq, const DualLine& owner, const PolygonVertex& a,
                                  const PolygonVertex& b) {
    const double lo = a.theta();
    const double hi = b.theta();
    double theta = crossing_theta(lq, owner).value_or(std::numeric_limits<double>::quiet_NaN());
    auto point = line_intersection(lq, owner);
    if (std::isnan(theta) && point) {
        theta = polar_angle(*point);
    }
    if (std::isnan(theta)) {
        theta = 0.5 * (lo + hi);
    }
    theta = std::clamp(theta, lo, hi);
    if (!point) {
        point = a.point;
    }
    return {*point, Direction::from_theta(theta)};
}

}  // namespace

HullSearchResult hull_search(const KPolygonIndex& index, const DualLine& lq) {
    HullSearchResult out;
    if (index.hull.size() < 2) {
        throw DomainError("index has no hull");
    }
    HullSearch(index.hull, lq, out).run();
    return out;
}

std::vector<BoundaryCrossing> concavity_scan(const KPolygonIndex& index, std::size_t edge, const DualLine& lq) {
    if (edge + 1 >= index.hull.size()) {
        throw DomainError("hull edge " + std::to_string(edge) + " out of range");
    }
    const auto& pocket = index.concavities[edge];
    std::vector<BoundaryCrossing> out;
    const PolygonVertex* prev = &index.hull[edge];
    bool prev_inside = strictly_inside(lq, prev->point);
    auto visit = [&](const PolygonVertex& v) {
        const bool inside = strictly_inside(lq, v.point);
        if (inside != prev_inside) {
            out.push_back(crossing_on_edge(lq, index.edge_line(*prev), *prev, v));
        }
        prev = &v;
        prev_inside = inside;
    };
    for (const auto& v : pocket) {
        visit(v);
    }
    visit(index.hull[edge + 1]);
    return out;
}

MrtopResult mrtop_query(const KPolygonIndex& index, const DataTuple& q, const QueryOptions& options) {
    return mrtop_query(index, dual_transform(q, index.tau), options);
}

MrtopResult mrtop_query(const KPolygonIndex& index, const DualLine& lq, const QueryOptions& options) {
    if (lq.tau != index.tau) {
        throw TauMismatchError("query line uses tau " + std::to_string(lq.tau) + " but the index was built with " +
                               std::to_string(index.tau));
    }
    const HullSearchResult found = hull_search(index, lq);

    std::vector<std::size_t> edges = found.edges;
    if (options.mode == QueryMode::strict) {
        // Hull vertices between consecutive crossed edges share one side of
        // the line; every edge inside an "inside" run gets scanned as well.
        bool inside = found.inside_at_start;
        std::size_t run_start = 0;
        auto flush = [&](std::size_t run_end) {
            if (inside) {
                for (std::size_t e = run_start; e < run_end; ++e) {
                    edges.push_back(e);
                }
            }
        };
        for (std::size_t e : found.edges) {
            flush(e);
            run_start = e + 1;
            inside = !inside;
        }
        flush(index.hull.size() - 1);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    }

    MrtopResult result;
    std::vector<AngularInterval> raw;
    bool inside = found.inside_at_start;
    AngularInterval open{Direction::x_axis(), Direction::x_axis(), inside, false};
    for (std::size_t e : edges) {
        for (const BoundaryCrossing& c : concavity_scan(index, e, lq)) {
            result.crossings.push_back(c.point);
            if (inside) {
                open.hi = c.direction;
                open.hi_closed = false;
                raw.push_back(open);
            } else {
                open = {c.direction, c.direction, false, false};
            }
            inside = !inside;
        }
    }
    if (inside) {
        open.hi = Direction::y_axis();
        open.hi_closed = found.inside_at_end;
        raw.push_back(open);
    }
    result.intervals = merge_adjacent(raw);
    return result;
}

std::vector<AngularInterval> merge_adjacent(std::span<const AngularInterval> intervals) {
    constexpr double kTouch = 1e-12;
    for (std::size_t i = 1; i < intervals.size(); ++i) {
        if (intervals[i].lo.theta < intervals[i - 1].lo.theta) {
            throw DomainError("merge_adjacent needs intervals sorted by lower end");
        }
    }
    std::vector<AngularInterval> out;
    for (const AngularInterval& next : intervals) {
        const bool empty = next.hi.theta < next.lo.theta ||
                           (next.hi.theta == next.lo.theta && !(next.lo_closed && next.hi_closed));
        if (empty) {
            continue;
        }
        if (!out.empty() && next.lo.theta <= out.back().hi.theta + kTouch) {
            AngularInterval& cur = out.back();
            if (next.hi.theta > cur.hi.theta) {
                cur.hi = next.hi;
                cur.hi_closed = next.hi_closed;
            } else if (next.hi.theta == cur.hi.theta) {
                cur.hi_closed = cur.hi_closed || next.hi_closed;
            }
            continue;
        }
        out.push_back(next);
    }
    return out;
}

std::string format_result(const TupleId& id, std::span<const AngularInterval> intervals) {
    std::string line = id;
    line += ';';
    char buf[64];
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const AngularInterval& iv = intervals[i];
        if (i > 0) {
            line += ';';
        }
        std::snprintf(buf, sizeof buf, "%.12g,%.12g", iv.lo.theta, iv.hi.theta);
        line += buf;
        if (iv.lo_closed || iv.hi_closed) {
            line += ',';
            line += iv.lo_closed ? '[' : '(';
            line += iv.hi_closed ? ']' : ')';
        }
    }
    return line;
}

namespace {

double parse_angle(std::string_view text) {
    const std::string owned(text);
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size() || !(value >= 0.0 && value <= kHalfPi + 1e-11)) {
        throw DomainError("bad angle '" + owned + "' in result line");
    }
    return std::min(value, kHalfPi);
}

Direction direction_at(double theta) {
    return std::abs(theta - kHalfPi) <= 1e-11 ? Direction::y_axis() : Direction::from_theta(theta);
}

}  // namespace

ResultLine parse_result_line(std::string_view line) {
    const auto semi = line.find(';');
    if (semi == std::string_view::npos) {
        throw DomainError("result line has no ';'");
    }
    ResultLine out;
    out.id = std::string(line.substr(0, semi));
    std::string_view rest = line.substr(semi + 1);
    while (!rest.empty()) {
        const auto next = rest.find(';');
        const std::string_view field = rest.substr(0, next);
        rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next + 1);

        std::vector<std::string_view> parts;
        std::size_t start = 0;
        while (true) {
            const auto comma = field.find(',', start);
            parts.push_back(field.substr(start, comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (parts.size() != 2 && parts.size() != 3) {
            throw DomainError("bad interval '" + std::string(field) + "'");
        }
        AngularInterval iv;
        iv.lo = direction_at(parse_angle(parts[0]));
        iv.hi = direction_at(parse_angle(parts[1]));
        if (parts.size() == 3) {
            const std::string_view flags = parts[2];
            if (flags.size() != 2 || (flags[0] != '[' && flags[0] != '(') || (flags[1] != ']' && flags[1] != ')')) {
                throw DomainError("bad endpoint flags '" + std::string(flags) + "'");
            }
            iv.lo_closed = flags[0] == '[';
            iv.hi_closed = flags[1] == ']';
        }
        out.intervals.push_back(iv);
    }
    return out;
}

}  // namespace mrtop
