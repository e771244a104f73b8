#include <benchmark/benchmark.h>

#include "pgraph/graph.hpp"
#include "pgraph/heap.hpp"
#include "pgraph/oracles.hpp"
#include "pgraph/schorr_waite.hpp"
#include "pgraph/union_find.hpp"

using namespace pgraph;

namespace {

PartialGraph binary_graph(std::size_t n) {
    GenConfig cfg;
    cfg.node_count = n;
    cfg.edge_density = 0.7;
    cfg.seed = 11;
    return gen_graph(cfg);
}

}  // namespace

static void BM_Mark(benchmark::State& state) {
    PartialGraph g = binary_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(sw_run(g, 3));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Mark)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

static void BM_MarkChecked(benchmark::State& state) {
    PartialGraph g = binary_graph(static_cast<std::size_t>(state.range(0)));
    SwOptions opts;
    opts.check_each_iteration = true;
    for (auto _ : state)
        benchmark::DoNotOptimize(sw_run(g, 3, opts));
}
BENCHMARK(BM_MarkChecked)->RangeMultiplier(2)->Range(8, 64);

static void BM_DfsOracle(benchmark::State& state) {
    PartialGraph g = binary_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(dfs_mark(g, 3));
}
BENCHMARK(BM_DfsOracle)->RangeMultiplier(4)->Range(16, 1024);

static void BM_Reach(benchmark::State& state) {
    PartialGraph g = binary_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(reach(g, 3));
}
BENCHMARK(BM_Reach)->RangeMultiplier(4)->Range(16, 1024);

static void BM_Layout(benchmark::State& state) {
    PartialGraph g = binary_graph(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(layout(g));
}
BENCHMARK(BM_Layout)->RangeMultiplier(4)->Range(16, 1024);

static void BM_UfScript(benchmark::State& state) {
    Rng rng(5);
    UfScript script = gen_uf_script(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_uf_script(script));
}
BENCHMARK(BM_UfScript)->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
