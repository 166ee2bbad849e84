#include <benchmark/benchmark.h>

#include "gpack/graph.hpp"
#include "gpack/lp.hpp"

using namespace gpack;

static void BM_LpExact(benchmark::State& state) {
    Graph g = gnp_random_graph(static_cast<Vertex>(state.range(0)), 0.5, 1);
    Family f = Family::of({complete_graph(3)}, {"K3"});
    for (auto _ : state) {
        LpResult r = solve_fractional_packing(g, f, LpMode::Exact);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_LpExact)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_LpFloat(benchmark::State& state) {
    Graph g = gnp_random_graph(static_cast<Vertex>(state.range(0)), 0.5, 1);
    Family f = Family::of({complete_graph(3)}, {"K3"});
    for (auto _ : state) {
        LpResult r = solve_fractional_packing(g, f, LpMode::Float);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_LpFloat)->Arg(24)->Arg(48)->Arg(60)->Unit(benchmark::kMillisecond);
