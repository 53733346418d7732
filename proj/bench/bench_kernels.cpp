// Serial reference kernels against their OpenMP twins.

#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "hardy/cli_reports.hpp"
#include "hardy/estimates.hpp"
#include "hardy/hardy_barrier.hpp"
#include "hardy/parallel.hpp"

namespace {

using hardy::kernels::Execution;

constexpr double kPi = std::numbers::pi;

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

const hardy::Problem& supercritical() {
    static const hardy::Problem p =
        hardy::Problem::build(hardy::ProblemParams(hardy::HardyParams(5, 2.0), 0.0, 4.0, 0.65 * kPi));
    return p;
}

void BM_RegionMap(benchmark::State& state) {
    const hardy::Range a{-4.0, 4.0, 201}, p{1.01, 6.0, 201};
    for (auto _ : state) benchmark::DoNotOptimize(hardy::region_map(5, 2.0, a, p, true, mode(state)));
}

void BM_JRScaling(benchmark::State& state) {
    const auto grid = hardy::half_decade_grid(2, 6);
    for (auto _ : state) benchmark::DoNotOptimize(hardy::J_R_scaling(supercritical(), grid, 4, mode(state)));
}

void BM_IRScaling(benchmark::State& state) {
    const auto grid = hardy::half_decade_grid(2, 6);
    for (auto _ : state)
        benchmark::DoNotOptimize(hardy::I_R_scaling(supercritical(), hardy::CutoffShape::power, grid, 4, mode(state)));
}

void BM_ContradictionDemo(benchmark::State& state) {
    const auto grid = hardy::half_decade_grid(2, 6);
    const auto [r1, r2] = hardy::default_source_window(0.65 * kPi);
    const auto f = [r1 = r1, r2 = r2](double r) { return r >= r1 && r <= r2 ? 1.0 : 0.0; };
    for (auto _ : state)
        benchmark::DoNotOptimize(hardy::contradiction_demo(supercritical(), 1.0, grid, f, r1, r2, 4, mode(state)));
}

void BM_BarrierScan(benchmark::State& state) {
    const hardy::Barrier& b = supercritical().barrier;
    std::vector<double> r(100000);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b.delta() + (kPi - b.delta()) * (i + 0.5) / r.size();
    const auto residual = [&](double x) { return b.ode_relative_residual(x); };
    for (auto _ : state) {
        if (state.range(0) == 0)
            benchmark::DoNotOptimize(hardy::kernels::max_serial(r, residual));
        else
            benchmark::DoNotOptimize(hardy::kernels::max_parallel(r, residual));
    }
}

}  // namespace

// Argument 0 = serial reference, 1 = OpenMP.
BENCHMARK(BM_RegionMap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_JRScaling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IRScaling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ContradictionDemo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BarrierScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
