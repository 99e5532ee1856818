#include <benchmark/benchmark.h>

#include "pcgmum/analysis.hpp"
#include "pcgmum/config.hpp"
#include "pcgmum/cvsim.hpp"

namespace {

const pcgmum::PhysicalScale kScale{632.9e-9, 0.29, 8e-6};

void BM_prepare_measure(benchmark::State& state) {
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    const pcgmum::MumConfig cfg = pcgmum::build_symmetric(3, pcgmum::Rational(1), 4, {1, 2, 1});
    const pcgmum::GridState input = pcgmum::gaussian_state(N, 10.5085, 0.0);
    const pcgmum::GridState prep = pcgmum::prepare(input, cfg, 1, 0);  // eigenbasis pair
    for (auto _ : state) {
        auto dist = pcgmum::measure_probs(prep, cfg, 1, 2);
        benchmark::DoNotOptimize(dist.probs.data());
    }
}
BENCHMARK(BM_prepare_measure)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_entropy_sweep(benchmark::State& state) {
    const pcgmum::MumConfig cfg = pcgmum::build_symmetric(3, pcgmum::Rational(1), 4, {1, 2, 1});
    pcgmum::SweepParams params;
    params.grid_size = 1024;
    params.beam_width = 6.0;
    params.min_period_px = 40.0;
    params.max_period_px = 200.0;
    for (auto _ : state) {
        auto sweep = pcgmum::entropy_sweep(cfg, params, kScale);
        benchmark::DoNotOptimize(sweep.samples.data());
    }
}
BENCHMARK(BM_entropy_sweep)->Unit(benchmark::kMillisecond);

}  // namespace
