// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "memdecide/experiment.hpp"

using namespace memdecide;

namespace {

const SwitchingCurve kCurve{0.6, 0.05};

TwoAfcConfig reference_task()
{
    TwoAfcConfig cfg;
    cfg.n_devices = 20;
    cfg.params = DeviceParams::at_compliance(270.0, kCurve, {2.0, 0.5});
    cfg.v_pulse = invert_p_on(kCurve, 0.01);
    cfg.spec_a = {40, 2.0};
    cfg.spec_b = {20, 2.0};
    return cfg;
}

SweepGrid bench_grid()
{
    SweepGrid g;
    g.durations_s = {0.5, 2.0, 5.0};
    g.ratios = {{40, 20}, {2, 1}};
    g.device_counts = {20, 50};
    g.i_cc_values_uA = {270.0};
    g.p_on_values = {0.01, 0.05};
    g.trials_per_point = 200;
    g.switching = kCurve;
    return g;
}

TraceExperiment bench_trace()
{
    TraceExperiment e;
    e.n_devices = 50;
    e.stream = generate_periodic(50, 10.0);
    e.p_on = 0.1;
    e.params = DeviceParams::at_compliance(300.0, kCurve, {1.0, 0.5});
    e.sample_rate_hz = 100.0;
    e.repeats = 200;
    return e;
}

void BM_estimate_serial(benchmark::State& state)
{
    const auto cfg = reference_task();
    for (auto _ : state) benchmark::DoNotOptimize(estimate_accuracy_serial(cfg, 1000, 1));
}

void BM_estimate_parallel(benchmark::State& state)
{
    const auto cfg = reference_task();
    for (auto _ : state) benchmark::DoNotOptimize(estimate_accuracy(cfg, 1000, 1));
}

void BM_sweep_serial(benchmark::State& state)
{
    const auto g = bench_grid();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(g));
}

void BM_sweep_parallel(benchmark::State& state)
{
    const auto g = bench_grid();
    for (auto _ : state) benchmark::DoNotOptimize(sweep(g));
}

void BM_trace_serial(benchmark::State& state)
{
    const auto e = bench_trace();
    for (auto _ : state) benchmark::DoNotOptimize(simulate_trace_repeats_serial(e));
}

void BM_trace_parallel(benchmark::State& state)
{
    const auto e = bench_trace();
    for (auto _ : state) benchmark::DoNotOptimize(simulate_trace_repeats(e));
}

}  // namespace

BENCHMARK(BM_estimate_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_estimate_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trace_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
