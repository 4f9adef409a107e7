// Parallel kernels against their serial twins.

#include "tvgap/bounds1d.hpp"
#include "tvgap/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace tvgap;

namespace {

CanonicalPair1D bench_pair() { return canonicalize_1d(Mixture1D(-0.1, 0.1, 1), Mixture1D(-0.2, 0.2, 1)); }

std::vector<double> bench_grid(std::size_t n) {
    GridSpec g;
    g.count = n;
    return g.points(1.0);
}

kernels::WhitenedMeans bench_means() {
    const SpdMatrix id(Matrix::identity(3));
    return kernels::whiten_means(MixtureND({-0.1, 0, 0}, {0.1, 0, 0}, id), MixtureND({-0.2, 0, 0}, {0.2, 0, 0}, id));
}

void BM_CharGapSerial(benchmark::State& state) {
    const auto cp = bench_pair();
    const auto ts = bench_grid(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::char_gap_max_serial(cp, ts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CharGapParallel(benchmark::State& state) {
    const auto cp = bench_pair();
    const auto ts = bench_grid(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::char_gap_max(cp, ts));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McSerial(benchmark::State& state) {
    const auto w = bench_means();
    const RandomStream s(1);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::mc_tv_sums_serial(w, std::size_t(state.range(0)), s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_McParallel(benchmark::State& state) {
    const auto w = bench_means();
    const RandomStream s(1);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::mc_tv_sums(w, std::size_t(state.range(0)), s));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_CharGapSerial)->Arg(2048)->Arg(1 << 16);
BENCHMARK(BM_CharGapParallel)->Arg(2048)->Arg(1 << 16);
BENCHMARK(BM_McSerial)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McParallel)->Arg(200000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
