#include <benchmark/benchmark.h>

#include "vdcolor/pipeline.hpp"

using namespace vdcolor;

namespace {

void run_mode(benchmark::State& state, Mode mode) {
    const int n = static_cast<int>(state.range(0));
    const int d = (3 * n) / 4 + ((3 * n) / 4 * n) % 2;
    const MultiGraph g = random_regular(n, d, 21);
    PipelineOptions options;
    options.timings = false;
    std::uint64_t seed = 1;
    long long fallbacks = 0;
    for (auto _ : state) {
        const PipelineResult res = run(mode, g, seed++, options);
        fallbacks += static_cast<long long>(res.report.fallbacks.size());
        benchmark::DoNotOptimize(res.report.verdict.proper);
    }
    state.counters["fallbacks_per_run"] =
        benchmark::Counter(static_cast<double>(fallbacks), benchmark::Counter::kAvgIterations);
}

}  // namespace

static void BM_PipelineVd(benchmark::State& state) { run_mode(state, Mode::Vd); }
BENCHMARK(BM_PipelineVd)->Arg(12)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_PipelineSd(benchmark::State& state) { run_mode(state, Mode::Sd); }
BENCHMARK(BM_PipelineSd)->Arg(12)->Arg(24)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
