#include <benchmark/benchmark.h>

#include "vdcolor/balance.hpp"
#include "vdcolor/matching.hpp"
#include "vdcolor/oracles.hpp"
#include "vdcolor/partition.hpp"
#include "vdcolor/rng.hpp"

using namespace vdcolor;

static void BM_FanColoring(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MultiGraph g = random_regular(n, (3 * n) / 4, 11);
    for (auto _ : state) {
        PartialColoring c(g, g.max_degree() + 1);
        misra_gries_complete(c);
        benchmark::DoNotOptimize(c.colored_count());
    }
}
BENCHMARK(BM_FanColoring)->Arg(20)->Arg(40)->Arg(80);

static void BM_BalanceMissing(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MultiGraph g = random_regular(n, n / 2, 12);
    PartialColoring start(g, g.max_degree() + 4);
    misra_gries_complete(start);
    for (auto _ : state) {
        const BalanceResult res = balance_missing(g, start, {}, 0);
        benchmark::DoNotOptimize(res.report.switches);
    }
}
BENCHMARK(BM_BalanceMissing)->Arg(20)->Arg(40)->Arg(80);

static void BM_BalancedPartition(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MultiGraph g = random_regular(n, (3 * n) / 4, 13);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        const Partition p = balanced_partition(g, {}, seed++);
        benchmark::DoNotOptimize(p.discrepancy);
    }
}
BENCHMARK(BM_BalancedPartition)->Arg(20)->Arg(60)->Arg(120);

static void BM_KonigColor(benchmark::State& state) {
    const int side = static_cast<int>(state.range(0));
    Rng rng(14);
    MultiGraph g(2 * side);
    std::vector<VertexId> perm(static_cast<std::size_t>(side));
    for (int i = 0; i < side; ++i) perm[i] = i;
    for (int k = 0; k < 8; ++k) {
        rng.shuffle(perm);
        for (int i = 0; i < side; ++i) g.add_edge(i, side + perm[i]);
    }
    for (auto _ : state) {
        const PartialColoring c = konig_color(g);
        benchmark::DoNotOptimize(c.colored_count());
    }
}
BENCHMARK(BM_KonigColor)->Arg(25)->Arg(50)->Arg(100);

static void BM_MaximumMatching(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const MultiGraph g = random_regular(n, 5, 15);
    const std::vector<char> allowed(static_cast<std::size_t>(g.edge_count()), 1);
    for (auto _ : state) benchmark::DoNotOptimize(maximum_matching(g, allowed).size());
}
BENCHMARK(BM_MaximumMatching)->Arg(40)->Arg(160);

static void BM_OracleComplete(benchmark::State& state) {
    const MultiGraph g = complete_graph(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exact_index(g, Distinction::Sd).value);
}
BENCHMARK(BM_OracleComplete)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);
