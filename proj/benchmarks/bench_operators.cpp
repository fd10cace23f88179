#include "dampedeb/mesh.hpp"
#include "dampedeb/operators.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace dampedeb;

namespace {

GridFn1D wave1d(int J) {
    return sample(Grid1D(J), [](double x) { return std::sin(std::numbers::pi * x) + 0.3 * std::sin(5 * x); });
}

GridFn2D wave2d(int J) {
    return sample(Grid2D(J, J), [](double x, double y) {
        return std::sin(std::numbers::pi * x) * std::sin(std::numbers::pi * y) + 0.1 * x * y * (1 - x) * (1 - y);
    });
}

void BM_ApplyA(benchmark::State& state) {
    const auto u = wave1d(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(apply_A(u));
}
BENCHMARK(BM_ApplyA)->RangeMultiplier(4)->Range(64, 16384);

void BM_SolveA(benchmark::State& state) {
    const auto u = wave1d(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_A(u));
}
BENCHMARK(BM_SolveA)->RangeMultiplier(4)->Range(64, 16384);

void BM_BuildStepMatrix1D(benchmark::State& state) {
    const Grid1D grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_step_matrix_1d(1e6, grid));
}
BENCHMARK(BM_BuildStepMatrix1D)->RangeMultiplier(4)->Range(64, 16384);

void BM_SolveStep1D(benchmark::State& state) {
    const int J = static_cast<int>(state.range(0));
    const auto m = build_step_matrix_1d(1e6, Grid1D(J));
    const auto rhs = wave1d(J);
    for (auto _ : state) benchmark::DoNotOptimize(solve_step_1d(m, rhs));
}
BENCHMARK(BM_SolveStep1D)->RangeMultiplier(4)->Range(64, 16384);

void BM_ApplyPhi(benchmark::State& state) {
    const auto u = wave2d(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(apply_Phi(u));
}
BENCHMARK(BM_ApplyPhi)->RangeMultiplier(2)->Range(16, 256);

void BM_SolveH(benchmark::State& state) {
    const auto u = wave2d(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_H(u));
}
BENCHMARK(BM_SolveH)->RangeMultiplier(2)->Range(16, 256);

void BM_SolveStep2D(benchmark::State& state) {
    const auto rhs = wave2d(static_cast<int>(state.range(0)));
    CgStats stats;
    for (auto _ : state) benchmark::DoNotOptimize(solve_step_2d(1e6, rhs, {}, nullptr, &stats));
    state.counters["cg_iters"] = stats.iterations;
}
BENCHMARK(BM_SolveStep2D)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMicrosecond);

}  // namespace
