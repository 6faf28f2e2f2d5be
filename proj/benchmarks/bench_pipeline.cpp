#include <benchmark/benchmark.h>

#include <numbers>

#include "stagger/field.hpp"
#include "stagger/oracle.hpp"

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

DefectKind kind_of(const benchmark::State& state) {
    return state.range(0) == 0 ? DefectKind::CrackPair : DefectKind::ConstraintPair;
}

void BM_ReducedSolve(benchmark::State& state) {
    const PreparedScenario p = prepare(desk(kind_of(state), static_cast<int>(state.range(1))));
    for (auto _ : state) {
        if (p.scenario.kind == DefectKind::CrackPair) {
            benchmark::DoNotOptimize(solve_crack(p));
        } else {
            benchmark::DoNotOptimize(solve_constraint(p));
        }
    }
}
BENCHMARK(BM_ReducedSolve)->ArgsProduct({{0, 1}, {-8, -3, 3, 8}})->Unit(benchmark::kMicrosecond);

void BM_FieldSynthesis(benchmark::State& state) {
    const ScatteringScenario s = desk(kind_of(state), 3);
    const long half = state.range(1);
    const FieldWindow window{-half, half, -half, half};
    for (auto _ : state) benchmark::DoNotOptimize(run_field(s, window));
}
BENCHMARK(BM_FieldSynthesis)->ArgsProduct({{0, 1}, {10, 40}})->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
    const ScatteringScenario s = desk(kind_of(state), 3);
    OracleOptions options;
    options.ng = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(solve_grid(s, options));
}
BENCHMARK(BM_Oracle)->ArgsProduct({{0, 1}, {30, 60}})->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
