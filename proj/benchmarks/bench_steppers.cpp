#include "dampedeb/expr.hpp"
#include "dampedeb/stepper1d.hpp"
#include "dampedeb/stepper2d.hpp"

#include <benchmark/benchmark.h>

using namespace dampedeb;

namespace {

void BM_Run1D(benchmark::State& state) {
    Problem1D p;
    p.u0 = expr::parse("sin(pi*x)");
    p.u1 = expr::parse("0");
    p.f = expr::parse("t^3*sin(pi*x)");
    p.law = DampingLaw::sqrt_law();
    const Grid1D grid(static_cast<int>(state.range(0)));
    const auto tg = TimeGrid::with_steps(256, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(run(p, grid, tg));
}
BENCHMARK(BM_Run1D)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

void BM_Run2D(benchmark::State& state) {
    Problem2D p;
    p.u0 = expr::parse("sin(pi*x)*sin(pi*y)");
    p.u1 = expr::parse("0");
    p.f = expr::parse("t^3*sin(pi*x)*sin(pi*y)");
    p.law = DampingLaw::linear();
    const Grid2D grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    const auto tg = TimeGrid::with_steps(64, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(run2d(p, grid, tg));
}
BENCHMARK(BM_Run2D)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
