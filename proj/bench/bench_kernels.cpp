// OpenMP kernels against their serial references.
#include <benchmark/benchmark.h>

#include <vector>

#include "pll/config.hpp"
#include "pll/jitter.hpp"
#include "pll/linear_analysis.hpp"
#include "pll/sweep.hpp"

using namespace pll;

namespace {

const LoopParams kParams(defaults::k_pd, defaults::k_vco, 100, 50e6);

void bm_bode(benchmark::State& state) {
    const auto tf = input_jitter_tf(kParams, default_filter());
    for (auto _ : state) benchmark::DoNotOptimize(bode(tf, 1.0, 1e11, static_cast<int>(state.range(0))));
}

void bm_bode_reference(benchmark::State& state) {
    const auto tf = input_jitter_tf(kParams, default_filter());
    for (auto _ : state) {
        benchmark::DoNotOptimize(bode_reference(tf, 1.0, 1e11, static_cast<int>(state.range(0))));
    }
}

std::vector<double> grid(std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = static_cast<double>(k) * 1e-10;
    return t;
}

void bm_jitter(benchmark::State& state) {
    const auto t = grid(static_cast<std::size_t>(state.range(0)));
    const auto spec = JitterSpec::random_walk(Injection::Vco, 1e-4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(gen_jitter(spec, t));
}

void bm_jitter_reference(benchmark::State& state) {
    const auto t = grid(static_cast<std::size_t>(state.range(0)));
    const auto spec = JitterSpec::random_walk(Injection::Vco, 1e-4, 1);
    for (auto _ : state) benchmark::DoNotOptimize(gen_jitter_reference(spec, t));
}

const auto kSweepBase = parse_config_entries("f_in_hz=5e7\nn_div=100\nduration_s=2e-5\n");

void bm_sweep(benchmark::State& state) {
    const std::vector<SweepAxis> axes = {parse_sweep_axis("k_pd_v_per_rad=log:0.25:3:8")};
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(kSweepBase, axes, static_cast<int>(state.range(0))));
}

void bm_sweep_reference(benchmark::State& state) {
    const std::vector<SweepAxis> axes = {parse_sweep_axis("k_pd_v_per_rad=log:0.25:3:8")};
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep_reference(kSweepBase, axes));
}

} // namespace

BENCHMARK(bm_bode)->Arg(4096)->Arg(65536);
BENCHMARK(bm_bode_reference)->Arg(4096)->Arg(65536);
BENCHMARK(bm_jitter)->Arg(1 << 20);
BENCHMARK(bm_jitter_reference)->Arg(1 << 20);
BENCHMARK(bm_sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep_reference)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
