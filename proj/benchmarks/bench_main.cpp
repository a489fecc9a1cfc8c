#include <benchmark/benchmark.h>

#include "dynlab/expansive.hpp"
#include "dynlab/gallery.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/shadowing.hpp"
#include "dynlab/specification.hpp"

using namespace dynlab;

// Subset exploration on window systems of growing radius.
static void BM_ShadowingWindow(benchmark::State& state) {
    const auto sys = window_system(build_xpq(3, 2), static_cast<std::size_t>(state.range(0)));
    std::size_t explored = 0;
    for (auto _ : state) {
        auto r = shadowing_holds(sys, Rational(1, 8), Rational(1, 4));
        explored = r.states_explored;
        benchmark::DoNotOptimize(r.holds);
    }
    state.counters["points"] = static_cast<double>(sys.size());
    state.counters["states"] = static_cast<double>(explored);
}
BENCHMARK(BM_ShadowingWindow)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_ShadowingProduct(benchmark::State& state) {
    const auto sys = window_system(build_product_truncation({2, 3, 5}, 2), 2);
    for (auto _ : state) benchmark::DoNotOptimize(shadowing_holds(sys, Rational(1, 8), Rational(1, 4)).holds);
    state.counters["points"] = static_cast<double>(sys.size());
}
BENCHMARK(BM_ShadowingProduct)->Unit(benchmark::kMillisecond);

static void BM_ShadowingTable(benchmark::State& state) {
    const auto sys = build_random_system(7, static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(shadowing_table(sys).rows.size());
}
BENCHMARK(BM_ShadowingTable)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

static void BM_LocalWeakSpec(benchmark::State& state) {
    const auto sys = build_random_system(3, static_cast<std::size_t>(state.range(0)), true);
    const auto grid = threshold_grid(sys).candidates();
    for (auto _ : state) benchmark::DoNotOptimize(local_weak_spec_holds(sys, grid.back(), 2, grid[grid.size() / 2]).holds);
}
BENCHMARK(BM_LocalWeakSpec)->RangeMultiplier(2)->Range(4, 32)->Unit(benchmark::kMillisecond);

static void BM_OrbitGaps(benchmark::State& state) {
    const auto m = build_myex(static_cast<std::size_t>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(orbit_gap_matrix(m.system).size());
    state.counters["points"] = static_cast<double>(m.system.size());
}
BENCHMARK(BM_OrbitGaps)->Arg(5)->Arg(7)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_SpectralDecomposition(benchmark::State& state) {
    const auto sys = build_random_system(11, static_cast<std::size_t>(state.range(0)), false);
    for (auto _ : state) benchmark::DoNotOptimize(spectral_decomposition(sys).basic_sets.size());
}
BENCHMARK(BM_SpectralDecomposition)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
