#include "rf/hl.hpp"
#include "rf/joyce.hpp"
#include "rf/types.hpp"

#include <benchmark/benchmark.h>

#include <thread>

using namespace rf;

static void BM_census_row(benchmark::State& st)
{
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(census_row(n));
}
BENCHMARK(BM_census_row)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

// n = 4 is the big row; run it once
static void BM_census_row4(benchmark::State& st)
{
    const auto threads = std::max(1u, std::thread::hardware_concurrency());
    for (auto _ : st)
        benchmark::DoNotOptimize(census_row(4, threads));
}
BENCHMARK(BM_census_row4)->Iterations(1)->Unit(benchmark::kSecond);

static void BM_minimizer_tup(benchmark::State& st)
{
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(count_types(n, CountKind::TupMin, CountMethod::Minimizer));
}
BENCHMARK(BM_minimizer_tup)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_joyce_trees(benchmark::State& st)
{
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(count_joyce_trees(n));
}
BENCHMARK(BM_joyce_trees)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_joyce_graphs(benchmark::State& st)
{
    for (auto _ : st)
        benchmark::DoNotOptimize(count_joyce_graphs(3));
}
BENCHMARK(BM_joyce_graphs)->Unit(benchmark::kMillisecond);

static void BM_emb_height_direct(benchmark::State& st)
{
    const int h = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(embedding_types_of_height_direct(h));
}
BENCHMARK(BM_emb_height_direct)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_min_fhl(benchmark::State& st)
{
    const LevelBound two = [](std::int64_t) { return std::int64_t{2}; };
    const int N = static_cast<int>(st.range(0));
    for (auto _ : st)
        benchmark::DoNotOptimize(min_fhl(N, 2, 1, two, 5));
}
BENCHMARK(BM_min_fhl)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
