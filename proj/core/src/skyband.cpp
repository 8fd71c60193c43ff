#include "mrtop/skyband.hpp"

#include <numeric>
#include <string>

#include "mrtop/errors.hpp"
#include "mrtop/kpolygon.hpp"

namespace mrtop {

namespace {

bool dominates(const DataTuple& u, const DataTuple& v) noexcept {
    return u.a1 > v.a1 && u.a2 > v.a2;
}

template <typename Primary, typename Secondary>
std::vector<std::size_t> top_rows(std::span<const DataTuple> relation, std::uint32_t k, Primary primary,
                                  Secondary secondary) {
    std::vector<std::size_t> rows(relation.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    const std::size_t take = std::min<std::size_t>(k, rows.size());
    std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take), rows.end(),
                      [&](std::size_t l, std::size_t r) {
                          const DataTuple& a = relation[l];
                          const DataTuple& b = relation[r];
                          if (primary(a) != primary(b)) {
                              return primary(a) > primary(b);
                          }
                          if (secondary(a) != secondary(b)) {
                              return secondary(a) > secondary(b);
                          }
                          if (a.id != b.id) {
                              return a.id < b.id;
                          }
                          return l < r;
                      });
    rows.resize(take);
    return rows;
}

void require_k(std::span<const DataTuple> relation, std::uint32_t k) {
    if (k < 1) {
        throw DomainError("k must be at least 1");
    }
    if (relation.size() < k) {
        throw DomainError("k = " + std::to_string(k) + " exceeds the relation size " +
                          std::to_string(relation.size()));
    }
}

}  // namespace

SkybandSet exact_skyband(std::span<const DataTuple> relation, std::uint32_t k) {
    if (k < 1) {
        throw DomainError("k must be at least 1");
    }
    SkybandSet out;
    out.exact = true;
    for (std::size_t i = 0; i < relation.size(); ++i) {
        std::size_t dominators = 0;
        for (std::size_t j = 0; j < relation.size() && dominators < k; ++j) {
            if (dominates(relation[j], relation[i])) {
                ++dominators;
            }
        }
        if (dominators < k) {
            out.rows.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> top_by_a1(std::span<const DataTuple> relation, std::uint32_t k) {
    return top_rows(relation, k, [](const DataTuple& v) { return v.a1; },
                    [](const DataTuple& v) { return v.a2; });
}

std::vector<std::size_t> top_by_a2(std::span<const DataTuple> relation, std::uint32_t k) {
    return top_rows(relation, k, [](const DataTuple& v) { return v.a2; },
                    [](const DataTuple& v) { return v.a1; });
}

SkybandSet contour_candidates(std::span<const DataTuple> relation, std::uint32_t k, double tau) {
    require_k(relation, k);

    std::vector<std::size_t> seed = top_by_a1(relation, k);
    const std::vector<std::size_t> by_a2 = top_by_a2(relation, k);
    seed.insert(seed.end(), by_a2.begin(), by_a2.end());
    std::sort(seed.begin(), seed.end());
    seed.erase(std::unique(seed.begin(), seed.end()), seed.end());

    std::vector<DualLine> lines;
    lines.reserve(seed.size());
    for (std::size_t row : seed) {
        lines.push_back(dual_transform(relation[row], tau));
    }
    lines = sort_by_x_intercept(std::move(lines));
    const KPolygonIndex coarse = build_polygon(lines, k, tau);

    // A line meets the closed polygon iff it passes below or through some
    // hull vertex: the score q.p is linear and peaks on the hull.
    SkybandSet out;
    for (std::size_t row = 0; row < relation.size(); ++row) {
        if (std::binary_search(seed.begin(), seed.end(), row)) {
            out.rows.push_back(row);
            continue;
        }
        const DataTuple& p = relation[row];
        for (const auto& h : coarse.hull) {
            if (p.a1 * h.point.x + p.a2 * h.point.y >= tau) {
                out.rows.push_back(row);
                break;
            }
        }
    }
    return out;
}

SkybandSet approximate_skyband(std::span<const DataTuple> relation, std::uint32_t k, double tau) {
    const SkybandSet candidates = contour_candidates(relation, k, tau);

    // Anything dominated by k candidates is dominated by k tuples of the
    // relation, so only the remainder can be in the k-skyband. Strong
    // candidates go first so that deep tuples are rejected early.
    std::vector<std::size_t> order = candidates.rows;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = relation[a].a1 + relation[a].a2;
        const double sb = relation[b].a1 + relation[b].a2;
        return sa > sb || (sa == sb && a < b);
    });

    SkybandSet out;
    for (std::size_t row = 0; row < relation.size(); ++row) {
        std::size_t dominators = 0;
        for (std::size_t c : order) {
            if (relation[c].a1 + relation[c].a2 <= relation[row].a1 + relation[row].a2) {
                break;
            }
            if (dominates(relation[c], relation[row]) && ++dominators >= k) {
                break;
            }
        }
        if (dominators < k) {
            out.rows.push_back(row);
        }
    }
    return out;
}

}  // namespace mrtop
