#include <benchmark/benchmark.h>

#include <numbers>

#include "stagger/factorization.hpp"
#include "stagger/prepared.hpp"

namespace {

using namespace stagger;

ScatteringScenario desk(DefectKind kind, int m_offset) {
    ScatteringScenario s;
    s.omega = {0.9, 0.1};
    s.theta = 25.0 * std::numbers::pi / 180.0;
    s.kind = kind;
    s.n_sep = 5;
    s.m_offset = m_offset;
    return s;
}

void BM_KernelBundle(benchmark::State& state) {
    const ContourGrid grid(1.0005, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_kernel_bundle({0.9, 0.1}, grid, 5, DefectKind::CrackPair));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelBundle)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_CauchyFactorize(benchmark::State& state) {
    const ContourGrid grid(1.0005, static_cast<std::size_t>(state.range(0)));
    const KernelBundle k = make_kernel_bundle({0.9, 0.1}, grid, 5, DefectKind::CrackPair);
    for (auto _ : state) benchmark::DoNotOptimize(cauchy_factorize(k.alpha, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CauchyFactorize)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_Prepare(benchmark::State& state) {
    const ScatteringScenario s = desk(DefectKind::ConstraintPair, 3);
    for (auto _ : state) benchmark::DoNotOptimize(prepare(s));
}
BENCHMARK(BM_Prepare)->Unit(benchmark::kMillisecond);

}  // namespace
