#include <benchmark/benchmark.h>

#include <memory>

#include "gpack/copies.hpp"
#include "gpack/graph.hpp"
#include "gpack/rng.hpp"

using namespace gpack;

static void BM_EnumerateUnlabeled(benchmark::State& state) {
    auto host = std::make_shared<Graph>(
        gnp_random_graph(static_cast<Vertex>(state.range(0)), 0.5, 1));
    Graph pattern = complete_graph(3);
    size_t copies = 0;
    for (auto _ : state) {
        CopyIndex idx = enumerate_unlabeled_copies(host, pattern);
        copies = idx.copy_count();
        benchmark::DoNotOptimize(copies);
    }
    state.counters["copies"] = static_cast<double>(copies);
}
BENCHMARK(BM_EnumerateUnlabeled)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_EnumerateLabeled(benchmark::State& state) {
    auto host = std::make_shared<Graph>(
        gnp_random_graph(static_cast<Vertex>(state.range(0)), 0.5, 1));
    Family f = Family::of({complete_graph(3)}, {"K3"});
    size_t copies = 0;
    for (auto _ : state) {
        CopyIndex idx = enumerate_labeled_copies(host, f);
        copies = idx.copy_count();
        benchmark::DoNotOptimize(copies);
    }
    state.counters["copies"] = static_cast<double>(copies);
}
BENCHMARK(BM_EnumerateLabeled)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_StreamPartite(benchmark::State& state) {
    Vertex t = static_cast<Vertex>(state.range(0));
    Graph host(static_cast<Vertex>(3 * t));
    Rng rng(5);
    std::vector<std::vector<Vertex>> classes(3);
    for (Vertex c = 0; c < 3; ++c)
        for (Vertex v = 0; v < t; ++v) classes[c].push_back(c * t + v);
    for (Vertex u : classes[0])
        for (Vertex v : classes[1])
            if (rng.bernoulli(0.5)) host.add_edge(u, v);
    for (Vertex u : classes[0])
        for (Vertex v : classes[2])
            if (rng.bernoulli(0.5)) host.add_edge(u, v);
    for (Vertex u : classes[1])
        for (Vertex v : classes[2])
            if (rng.bernoulli(0.5)) host.add_edge(u, v);
    for (auto _ : state) {
        uint64_t n = 0;
        for_each_partite_copy(host, complete_graph(3), classes,
                              [&](std::span<const Vertex>) { ++n; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_StreamPartite)->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
