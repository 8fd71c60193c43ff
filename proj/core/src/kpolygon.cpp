#include "mrtop/kpolygon.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "mrtop/errors.hpp"
#include "mrtop/skyband.hpp"

namespace mrtop {

std::size_t KPolygonIndex::vertex_count() const noexcept {
    std::size_t total = hull.size();
    for (const auto& pocket : concavities) {
        total += pocket.size();
    }
    return total;
}

std::vector<PolygonVertex> KPolygonIndex::chain() const {
    std::vector<PolygonVertex> out;
    out.reserve(vertex_count());
    for (std::size_t i = 0; i < hull.size(); ++i) {
        out.push_back(hull[i]);
        if (i < concavities.size()) {
            out.insert(out.end(), concavities[i].begin(), concavities[i].end());
        }
    }
    return out;
}

namespace {

double cross(Point o, Point a, Point b) noexcept {
    return (a.x - o.x) * (b.y - a.y) - (a.y - o.y) * (b.x - a.x);
}

[[noreturn]] void broken(const std::string& what) {
    throw IndexFormatError(IndexFormatError::Kind::invariant_violation, what);
}

bool finite_in_quadrant(Point p) noexcept {
    return std::isfinite(p.x) && std::isfinite(p.y) && p.x >= 0.0 && p.y >= 0.0 &&
           !(p.x == 0.0 && p.y == 0.0);
}

}  // namespace

void validate(const KPolygonIndex& index) {
    if (index.k < 1) {
        broken("k must be at least 1");
    }
    if (!(index.tau > 0.0) || !std::isfinite(index.tau)) {
        broken("tau must be positive and finite");
    }
    const auto& hull = index.hull;
    if (hull.size() < 2) {
        broken("hull needs at least the two axis vertices");
    }
    if (index.concavities.size() != hull.size() - 1) {
        broken("concavity array must have |hull| - 1 entries");
    }
    if (hull.front().point.y != 0.0 || hull.front().left_line != kAxisLine) {
        broken("first hull vertex must lie on the x-axis");
    }
    if (hull.back().point.x != 0.0 || hull.back().right_line != kAxisLine) {
        broken("last hull vertex must lie on the y-axis");
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        if (!(hull[i].theta() < hull[i + 1].theta())) {
            broken("hull directions must strictly increase at vertex " + std::to_string(i));
        }
        if (i + 2 < hull.size() && !(cross(hull[i].point, hull[i + 1].point, hull[i + 2].point) > 0.0)) {
            broken("hull is not strictly convex at vertex " + std::to_string(i + 1));
        }
        const auto& pocket = index.concavities[i];
        double prev = hull[i].theta();
        for (const auto& v : pocket) {
            if (!(v.theta() > prev)) {
                broken("concavity " + std::to_string(i) + " is not in angular order");
            }
            if (cross(hull[i].point, hull[i + 1].point, v.point) < -kGeometryEps) {
                broken("concavity " + std::to_string(i) + " has a vertex beyond its hull edge");
            }
            prev = v.theta();
        }
        if (!(prev < hull[i + 1].theta())) {
            broken("concavity " + std::to_string(i) + " leaves its hull edge");
        }
    }
    const auto chain = index.chain();
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (!finite_in_quadrant(chain[i].point)) {
            broken("vertex outside the closed positive quadrant");
        }
        const bool first = i == 0;
        const bool last = i + 1 == chain.size();
        if ((!first && chain[i].left_line >= index.lines.size()) ||
            (!last && chain[i].right_line >= index.lines.size())) {
            broken("vertex references an unknown line");
        }
        if (!last && chain[i].right_line != chain[i + 1].left_line) {
            broken("consecutive vertices do not share an edge line");
        }
    }
    for (const auto& line : index.lines) {
        if (line.tau != index.tau) {
            broken("line table tau differs from index tau");
        }
    }
}

std::vector<DualLine> sort_by_x_intercept(std::vector<DualLine> lines) {
    // Descending a1 is ascending tau/a1 without the rounding of the division.
    std::stable_sort(lines.begin(), lines.end(),
                     [](const DualLine& l, const DualLine& r) { return l.a1 > r.a1; });
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i - 1].a1 == lines[i].a1) {
            throw GeneralPositionError("duplicate x-intercept between lines '" + lines[i - 1].source +
                                           "' and '" + lines[i].source + "'",
                                       {lines[i - 1].source, lines[i].source});
        }
    }
    return lines;
}

namespace {

struct SweepEvent {
    double theta;
    std::uint32_t near_line;  // nearer the origin before the crossing
    std::uint32_t far_line;
};

struct LaterEvent {
    bool operator()(const SweepEvent& a, const SweepEvent& b) const noexcept {
        if (a.theta != b.theta) {
            return a.theta > b.theta;
        }
        if (a.near_line != b.near_line) {
            return a.near_line > b.near_line;
        }
        return a.far_line > b.far_line;
    }
};

class RadialSweep {
public:
    RadialSweep(std::span<const DualLine> lines, std::uint32_t k, const SweepOptions& options)
        : lines_(lines), k_(k), options_(options), order_(lines.size()), position_(lines.size()) {
        std::iota(order_.begin(), order_.end(), 0u);
        std::iota(position_.begin(), position_.end(), 0u);
    }

    void run() {
        const std::uint32_t kth = k_ - 1;
        const DualLine& first = lines_[order_[kth]];
        add_vertex({{first.x_intercept, 0.0}, kAxisLine, order_[kth]});

        for (std::size_t i = 0; i + 1 < order_.size(); ++i) {
            schedule(i);
        }
        while (!queue_.empty()) {
            const SweepEvent event = queue_.top();
            queue_.pop();
            if (options_.check_event_queue) {
                queued_.erase(queued_.find({event.near_line, event.far_line}));
            }
            const std::uint32_t i = position_[event.near_line];
            if (position_[event.far_line] != i + 1) {
                ++stats_.stale_events;
                continue;
            }
            ++stats_.events_processed;
            guard_concurrency(event, i);

            const bool touches_kth = i == kth || i + 1 == kth;
            const std::uint32_t old_kth = order_[kth];
            std::swap(order_[i], order_[i + 1]);
            position_[event.near_line] = i + 1;
            position_[event.far_line] = i;
            if (touches_kth) {
                const auto p = line_intersection(lines_[event.near_line], lines_[event.far_line]);
                if (!p) {
                    throw GeneralPositionError("sweep event between parallel lines",
                                               {lines_[event.near_line].source, lines_[event.far_line].source});
                }
                add_vertex({*p, old_kth, order_[kth]});
            }
            if (i > 0) {
                schedule(i - 1);
            }
            if (i + 2 < order_.size()) {
                schedule(i + 1);
            }
            if (options_.check_event_queue) {
                check_queue();
            }
        }

        const DualLine& last = lines_[order_[kth]];
        add_vertex({{0.0, last.y_intercept}, order_[kth], kAxisLine});
        pockets_.pop_back();
        if (options_.stats) {
            *options_.stats = stats_;
        }
    }

    std::vector<PolygonVertex> take_hull() { return std::move(hull_); }
    std::vector<std::vector<PolygonVertex>> take_pockets() { return std::move(pockets_); }

private:
    // Queues the crossing of the pair at positions (i, i + 1) when it lies
    // ahead of the sweep: the nearer line must have the smaller a2.
    void schedule(std::size_t i) {
        const std::uint32_t near = order_[i];
        const std::uint32_t far = order_[i + 1];
        const DualLine& u = lines_[near];
        const DualLine& v = lines_[far];
        if (!(u.a2 < v.a2)) {
            return;
        }
        queue_.push({std::atan2(u.a1 - v.a1, v.a2 - u.a2), near, far});
        ++stats_.events_pushed;
        if (options_.check_event_queue) {
            queued_.insert({near, far});
        }
    }

    void guard_concurrency(const SweepEvent& event, std::uint32_t position) {
        if (event.theta != current_theta_) {
            current_theta_ = event.theta;
            same_angle_.clear();
        }
        for (const auto& [other_position, near, far] : same_angle_) {
            const std::uint32_t gap = other_position > position ? other_position - position
                                                                : position - other_position;
            if (gap <= 1) {
                throw GeneralPositionError(
                    "concurrent sweep events at the same list position (lines '" + lines_[near].source +
                        "', '" + lines_[far].source + "', '" + lines_[event.near_line].source + "', '" +
                        lines_[event.far_line].source + "')",
                    {lines_[near].source, lines_[far].source, lines_[event.near_line].source,
                     lines_[event.far_line].source});
            }
        }
        same_angle_.push_back({position, event.near_line, event.far_line});
    }

    // Incremental hull in angular order. Vertices that stop being convex are
    // demoted, together with their own pockets, into the pocket of the
    // surviving anchor.
    void add_vertex(const PolygonVertex& v) {
        while (hull_.size() >= 2 &&
               cross(hull_[hull_.size() - 2].point, hull_.back().point, v.point) <= kGeometryEps) {
            PolygonVertex demoted = hull_.back();
            std::vector<PolygonVertex> demoted_pocket = std::move(pockets_.back());
            hull_.pop_back();
            pockets_.pop_back();
            auto& anchor = pockets_.back();
            anchor.push_back(demoted);
            anchor.insert(anchor.end(), demoted_pocket.begin(), demoted_pocket.end());
        }
        hull_.push_back(v);
        pockets_.emplace_back();
    }

    void check_queue() const {
        for (std::size_t i = 0; i + 1 < order_.size(); ++i) {
            const std::uint32_t near = order_[i];
            const std::uint32_t far = order_[i + 1];
            if (lines_[near].a2 < lines_[far].a2 && !queued_.contains({near, far})) {
                throw std::logic_error("sweep lost the forward crossing of '" + lines_[near].source +
                                       "' and '" + lines_[far].source + "'");
            }
        }
    }

    struct SameAngle {
        std::uint32_t position;
        std::uint32_t near;
        std::uint32_t far;
    };

    std::span<const DualLine> lines_;
    std::uint32_t k_;
    SweepOptions options_;
    std::vector<std::uint32_t> order_;
    std::vector<std::uint32_t> position_;
    std::priority_queue<SweepEvent, std::vector<SweepEvent>, LaterEvent> queue_;
    std::multiset<std::pair<std::uint32_t, std::uint32_t>> queued_;
    double current_theta_ = -1.0;
    std::vector<SameAngle> same_angle_;
    std::vector<PolygonVertex> hull_;
    std::vector<std::vector<PolygonVertex>> pockets_;
    SweepStats stats_;
};

}  // namespace

KPolygonIndex build_polygon(std::span<const DualLine> sorted_lines, std::uint32_t k, double tau,
                            const SweepOptions& options) {
    if (k < 1) {
        throw DomainError("k must be at least 1");
    }
    if (sorted_lines.size() < k) {
        throw DomainError("k = " + std::to_string(k) + " exceeds the " + std::to_string(sorted_lines.size()) +
                          " available lines");
    }
    if (sorted_lines.size() >= kAxisLine) {
        throw DomainError("too many lines for one index");
    }
    for (std::size_t i = 0; i < sorted_lines.size(); ++i) {
        if (sorted_lines[i].tau != tau) {
            throw TauMismatchError("line '" + sorted_lines[i].source + "' was transformed with another tau");
        }
        if (i > 0 && !(sorted_lines[i - 1].a1 > sorted_lines[i].a1)) {
            if (sorted_lines[i - 1].a1 == sorted_lines[i].a1) {
                throw GeneralPositionError("duplicate x-intercept between lines '" + sorted_lines[i - 1].source +
                                               "' and '" + sorted_lines[i].source + "'",
                                           {sorted_lines[i - 1].source, sorted_lines[i].source});
            }
            throw DomainError("lines are not sorted by ascending x-intercept");
        }
    }

    RadialSweep sweep(sorted_lines, k, options);
    sweep.run();

    KPolygonIndex index;
    index.k = k;
    index.tau = tau;
    index.hull = sweep.take_hull();
    index.concavities = sweep.take_pockets();

    // Keep only contributing lines, numbered by first appearance on the contour.
    std::unordered_map<std::uint32_t, std::uint32_t> slot;
    auto remap = [&](std::uint32_t& line) {
        if (line == kAxisLine) {
            return;
        }
        auto [it, inserted] = slot.try_emplace(line, static_cast<std::uint32_t>(index.lines.size()));
        if (inserted) {
            index.lines.push_back(sorted_lines[line]);
        }
        line = it->second;
    };
    for (std::size_t i = 0; i < index.hull.size(); ++i) {
        remap(index.hull[i].left_line);
        remap(index.hull[i].right_line);
        if (i < index.concavities.size()) {
            for (auto& v : index.concavities[i]) {
                remap(v.left_line);
                remap(v.right_line);
            }
        }
    }
    return index;
}

BuildResult build_index(std::span<const DataTuple> relation, std::uint32_t k, double tau,
                        const BuildOptions& options) {
    if (k < 1) {
        throw DomainError("k must be at least 1");
    }
    if (relation.size() < k) {
        throw DomainError("k = " + std::to_string(k) + " exceeds the relation size " +
                          std::to_string(relation.size()));
    }
    std::vector<DualLine> lines;
    if (options.prune_with_skyband) {
        const SkybandSet candidates = approximate_skyband(relation, k, tau);
        lines.reserve(candidates.rows.size());
        for (std::size_t row : candidates.rows) {
            lines.push_back(dual_transform(relation[row], tau));
        }
    } else {
        lines.reserve(relation.size());
        for (const auto& v : relation) {
            lines.push_back(dual_transform(v, tau));
        }
    }
    lines = sort_by_x_intercept(std::move(lines));

    BuildResult result;
    result.input_size = relation.size();
    result.swept_lines = lines.size();
    result.index = build_polygon(lines, k, tau, options.sweep);
    return result;
}

}  // namespace mrtop
