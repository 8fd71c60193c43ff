#include <benchmark/benchmark.h>

#include <algorithm>
#include <map>
#include <random>

#include "mrtop/baselines.hpp"
#include "mrtop/dataset.hpp"
#include "mrtop/kpolygon.hpp"
#include "mrtop/query.hpp"

using namespace mrtop;

namespace {

constexpr double kTau = 0.5;

const std::vector<DataTuple>& relation(std::size_t n) {
    static std::map<std::size_t, std::vector<DataTuple>> cache;
    auto [it, inserted] = cache.try_emplace(n);
    if (inserted) {
        it->second = gen_synthetic(n, Distribution::uniform, 2011).tuples;
    }
    return it->second;
}

const std::vector<DataTuple>& queries() {
    static const auto qs = gen_synthetic(578, Distribution::uniform, 2009).tuples;
    return qs;
}

void BM_IndexQuery(benchmark::State& state) {
    const auto& d = relation(static_cast<std::size_t>(state.range(0)));
    const KPolygonIndex index = build_index(d, static_cast<std::uint32_t>(state.range(1)), kTau).index;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mrtop_query(index, queries()[i++ % queries().size()]));
    }
    state.counters["hull"] = static_cast<double>(index.hull.size());
}
BENCHMARK(BM_IndexQuery)->ArgsProduct({{1000, 21383, 100000}, {1, 10}});

void BM_HullOnlyQuery(benchmark::State& state) {
    const KPolygonIndex index = build_index(relation(21383), static_cast<std::uint32_t>(state.range(0)), kTau).index;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mrtop_query(index, queries()[i++ % queries().size()], {QueryMode::hull_only}));
    }
}
BENCHMARK(BM_HullOnlyQuery)->Arg(1)->Arg(10);

void BM_Oracle(benchmark::State& state) {
    const auto& d = relation(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_mrtop(d, queries()[i++ % queries().size()], 10));
    }
}
BENCHMARK(BM_Oracle)->Arg(1000)->Arg(21383)->Unit(benchmark::kMicrosecond);

// Input order matters to the segment-splitting baseline: range(1) selects
// generator order (0), descending a2 (1) or a seeded shuffle (2).
void BM_Wang(benchmark::State& state) {
    auto d = relation(static_cast<std::size_t>(state.range(0)));
    if (state.range(1) == 1) {
        std::stable_sort(d.begin(), d.end(), [](const DataTuple& a, const DataTuple& b) { return a.a2 > b.a2; });
    } else if (state.range(1) == 2) {
        std::mt19937_64 rng(7);
        std::shuffle(d.begin(), d.end(), rng);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(wang_mrtop(d, queries()[i++ % queries().size()], 10, kTau));
    }
}
BENCHMARK(BM_Wang)->ArgsProduct({{1000, 21383}, {0, 1, 2}})->Unit(benchmark::kMicrosecond);

void BM_Build(benchmark::State& state) {
    const auto& d = relation(21383);
    const auto k = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_index(d, k, kTau));
    }
}
BENCHMARK(BM_Build)->DenseRange(1, 10, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
