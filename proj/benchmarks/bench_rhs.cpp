// Dense vs cell-binned pairwise velocity evaluation for a compactly supported
// kernel on a two-blob configuration. Informational: the binned route should
// win clearly once most pairs are out of range.

#include <random>

#include <benchmark/benchmark.h>

#include "agora/micro.hpp"

namespace {

agora::AgentEnsemble two_blob_ensemble(std::size_t m) {
    agora::AgentEnsemble e;
    e.dim = 1;
    std::mt19937_64 rng(123);
    auto u01 = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    for (std::size_t i = 0; i < m; ++i) {
        double center = (i < m / 2) ? -3.0 : 3.0;
        e.positions.push_back(agora::Vec(1, center + 0.2 * (u01() - 0.5)));
        e.birth_times.push_back(0.0);
    }
    return e;
}

void bench_dense(benchmark::State& state) {
    auto e = two_blob_ensemble(static_cast<std::size_t>(state.range(0)));
    auto kernel = agora::InfluenceKernel::type2_tent();
    for (auto _ : state) benchmark::DoNotOptimize(agora::rhs(e, kernel));
}

void bench_binned(benchmark::State& state) {
    auto e = two_blob_ensemble(static_cast<std::size_t>(state.range(0)));
    auto kernel = agora::InfluenceKernel::type2_tent();
    for (auto _ : state) benchmark::DoNotOptimize(agora::neighbor_accelerated_rhs(e, kernel));
}

}  // namespace

BENCHMARK(bench_dense)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_binned)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
