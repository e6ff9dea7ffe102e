#include <benchmark/benchmark.h>

#include "equitile/classifier.hpp"
#include "equitile/constructors.hpp"
#include "equitile/rotational.hpp"
#include "equitile/tiler.hpp"
#include "equitile/verify.hpp"

using namespace equitile;

static void BM_ConstructP7(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(construct_p7());
}
BENCHMARK(BM_ConstructP7);

static void BM_ConstructP8(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(construct_p8());
}
BENCHMARK(BM_ConstructP8);

// Grid step in hundredths of a degree. The scan runs on a worker thread,
// hence real time.
static void BM_SearchType9(benchmark::State& state) {
    const double step = deg_to_rad(static_cast<double>(state.range(0)) / 100.0);
    for (auto _ : state) benchmark::DoNotOptimize(search_type9(step, 1e-3, 1));
}
BENCHMARK(BM_SearchType9)->Arg(25)->Arg(10)->UseRealTime()->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
    const auto p = sample_tiling_hexagon(0, 1, 3, {0.6, 0.7});
    for (auto _ : state) benchmark::DoNotOptimize(classify(p));
}
BENCHMARK(BM_Classify);

static void BM_GrowPatchP8(benchmark::State& state) {
    const auto p = construct_p8();
    for (auto _ : state) benchmark::DoNotOptimize(grow_patch(p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GrowPatchP8)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_GrowPatchHexagon(benchmark::State& state) {
    const auto p = sample_tiling_hexagon(0, 2, 3, {0.65, 0.6});
    for (auto _ : state) benchmark::DoNotOptimize(grow_patch(p, 2));
}
BENCHMARK(BM_GrowPatchHexagon)->Unit(benchmark::kMillisecond);

static void BM_VerifyPatch(benchmark::State& state) {
    const auto grown = grow_patch(construct_p7(), 3);
    for (auto _ : state) benchmark::DoNotOptimize(verify_patch(grown.patch));
    state.counters["tiles"] = static_cast<double>(grown.patch.tiles.size());
}
BENCHMARK(BM_VerifyPatch)->Unit(benchmark::kMillisecond);

static void BM_Rotational(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rotational_hexagon_tiling(n, 3));
}
BENCHMARK(BM_Rotational)->Arg(5)->Arg(7)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
