#include <benchmark/benchmark.h>

#include <numbers>

#include "pcgmum/cvsim.hpp"
#include "pcgmum/frft.hpp"

namespace {

void BM_centered_dft(benchmark::State& state) {
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    pcgmum::GridState g = pcgmum::gaussian_state(N, 6.0, 0.0);
    for (auto _ : state) {
        auto x = g.amplitudes;
        pcgmum::centered_dft(x);
        benchmark::DoNotOptimize(x.data());
    }
}
BENCHMARK(BM_centered_dft)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_frft_eigenbasis_apply(benchmark::State& state) {
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    const pcgmum::GridState g = pcgmum::gaussian_state(N, 6.0, 0.0);
    pcgmum::frft(g, 0.7);  // warm the basis cache
    for (auto _ : state) {
        auto y = pcgmum::frft(g, 0.7);
        benchmark::DoNotOptimize(y.amplitudes.data());
    }
}
BENCHMARK(BM_frft_eigenbasis_apply)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_frft_chirp(benchmark::State& state) {
    const std::size_t N = static_cast<std::size_t>(state.range(0));
    const pcgmum::GridState g = pcgmum::gaussian_state(N, 6.0, 0.0);
    for (auto _ : state) {
        auto y = pcgmum::frft_chirp(g, 0.7);
        benchmark::DoNotOptimize(y.amplitudes.data());
    }
}
BENCHMARK(BM_frft_chirp)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace
