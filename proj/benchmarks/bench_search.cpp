#include <benchmark/benchmark.h>

#include "pcgmum/numtheory.hpp"

namespace {

void BM_search_max_family(benchmark::State& state) {
    const std::int64_t d = state.range(0);
    for (auto _ : state) {
        auto r = pcgmum::search_max_family(d, 8);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_search_max_family)->Arg(5)->Arg(7)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
