#include "wind/brownian.hpp"
#include "wind/excursions.hpp"
#include "wind/lattice_walk.hpp"
#include "wind/winding_core.hpp"

#include <benchmark/benchmark.h>

using namespace wind;

static void BM_GenWalk(benchmark::State& state) {
    const auto n = state.range(0);
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(gen_walk(LatticeKind::Square, n, seed++));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GenWalk)->Arg(1 << 12)->Arg(1 << 16);

static void BM_IndexField(benchmark::State& state) {
    const auto n = state.range(0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto loop = close_loop(gen_walk(LatticeKind::Square, n, seed++));
        benchmark::DoNotOptimize(index_field(loop));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_IndexField)->Arg(1 << 12)->Arg(1 << 16);

static void BM_PointIndex(benchmark::State& state) {
    const auto loop = close_loop(gen_walk(LatticeKind::Square, state.range(0), 7));
    for (auto _ : state)
        benchmark::DoNotOptimize(point_index(loop, {0.3, 0.4}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PointIndex)->Arg(1 << 16)->Arg(1 << 20);

static void BM_Decompose(benchmark::State& state) {
    const auto path = gen_walk(LatticeKind::Square, state.range(0), 7);
    const auto frame = build_frame({0.25, 0.375}, LatticeKind::Square);
    for (auto _ : state)
        benchmark::DoNotOptimize(decompose(path, frame, false));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Decompose)->Arg(1 << 16);

static void BM_GenBm(benchmark::State& state) {
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(gen_bm(state.range(0), seed++));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenBm)->Arg(1 << 14);

BENCHMARK_MAIN();
