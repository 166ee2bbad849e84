#include <benchmark/benchmark.h>

#include "gpack/hypergraph.hpp"

using namespace gpack;

static void BM_Nibble(benchmark::State& state) {
    UniformHypergraph h =
        complete_uniform_hypergraph(static_cast<uint32_t>(state.range(0)), 3);
    size_t matched = 0;
    for (auto _ : state) {
        HyperMatching m = nibble_matching(h, 0.1, 0.1, 1);
        matched = m.size();
        benchmark::DoNotOptimize(matched);
    }
    state.counters["matched"] = static_cast<double>(matched);
}
BENCHMARK(BM_Nibble)->Arg(30)->Arg(90)->Arg(150)->Unit(benchmark::kMillisecond);

static void BM_GreedyMatching(benchmark::State& state) {
    UniformHypergraph h =
        complete_uniform_hypergraph(static_cast<uint32_t>(state.range(0)), 3);
    for (auto _ : state) {
        HyperMatching m = greedy_matching(h, 1);
        benchmark::DoNotOptimize(m.size());
    }
}
BENCHMARK(BM_GreedyMatching)->Arg(30)->Arg(90)->Arg(150)->Unit(benchmark::kMillisecond);
