// Monte Carlo harness: accuracy estimation, parameter sweeps, averaged
// synapse traces and the analytic oracles used to check them.
//
// Every trial and every trace repeat draws from its own generator seeded by
// derive_seed(), so results do not depend on thread count or scheduling. The
// parallel kernels have *_serial twins that are kept as the reference
// implementation and must agree bit for bit.
#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "memdecide/calibration.hpp"
#include "memdecide/device.hpp"
#include "memdecide/network.hpp"
#include "memdecide/stream.hpp"
#include "memdecide/synapse.hpp"

namespace memdecide {

/// Pulse amplitude with switching_probability(curve, v) == p_target.
/// Throws InvalidArgument unless 0 < p_target < 1.
double invert_p_on(const SwitchingCurve& curve, double p_target);

/// invert_p_on extended to the closed interval: 0 maps to -inf and 1 to +inf,
/// where the switching probability is exactly 0 and 1.
double amplitude_for_probability(const SwitchingCurve& curve, double p);

/// n * (1 - (1 - p)^k): mean ON count after k pulses with no relaxation.
double expected_on_count_no_decay(std::size_t n, double p, std::size_t k);

struct AccuracyPoint {
    double duration_s = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
    std::size_t n_devices = 0;
    double i_cc_uA = 0.0;
    double p_on = 0.0;
    double accuracy = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n_trials = 0;
    std::size_t n_ties = 0;
    std::size_t n_correct = 0;

    friend bool operator==(const AccuracyPoint&, const AccuracyPoint&) = default;
};

/// Seed of trial i in a batch: derive_seed(master_seed, {trial_offset + i}).
AccuracyPoint estimate_accuracy(const TwoAfcConfig& cfg, std::size_t trials,
                                std::uint64_t master_seed, std::size_t trial_offset = 0);
AccuracyPoint estimate_accuracy_serial(const TwoAfcConfig& cfg, std::size_t trials,
                                       std::uint64_t master_seed,
                                       std::size_t trial_offset = 0);

/// Per-trial results in trial order (same seeding as estimate_accuracy).
std::vector<TrialResult> run_trials(const TwoAfcConfig& cfg, std::size_t trials,
                                     std::uint64_t master_seed, std::size_t trial_offset = 0);

struct SweepGrid {
    std::vector<double> durations_s;
    std::vector<std::pair<std::size_t, std::size_t>> ratios;  // (n_a, n_b)
    std::vector<std::size_t> device_counts;
    std::vector<double> i_cc_values_uA;
    std::vector<double> p_on_values;
    std::size_t trials_per_point = 1000;
    std::uint64_t master_seed = 1;

    // Device model shared by every cell; retention and i_on follow i_cc.
    SwitchingCurve switching;
    RetentionTable retention_table = default_retention_table();
};

/// Throws InvalidArgument on empty axes, trials_per_point == 0 or p_on
/// outside [0, 1].
void validate(const SweepGrid& grid);

/// Grid coordinate indices in loop order duration, ratio, n_devices, i_cc,
/// p_on (the last varies fastest).
struct GridIndex {
    std::size_t duration = 0;
    std::size_t ratio = 0;
    std::size_t devices = 0;
    std::size_t i_cc = 0;
    std::size_t p_on = 0;
};

std::uint64_t cell_seed(std::uint64_t master_seed, const GridIndex& index);

/// Configuration simulated at one grid cell.
TwoAfcConfig cell_config(const SweepGrid& grid, const GridIndex& index);

/// One point per grid cell in loop order; cell k runs
/// estimate_accuracy(cell_config, trials, cell_seed(master, index), 0) and
/// reports the requested p_on rather than the one recomputed from v_pulse.
std::vector<AccuracyPoint> sweep(const SweepGrid& grid);
std::vector<AccuracyPoint> sweep_serial(const SweepGrid& grid);

/// `duration_s,n_a,n_b,n_devices,i_cc_uA,p_on,accuracy,ci_low,ci_high,n_trials,n_ties`
/// preceded by `# ` comment lines.
void write_report_csv(std::ostream& out, std::span<const AccuracyPoint> points,
                      std::span<const std::string> comments = {});

/// Samples at k / sample_rate_hz for every k with time <= stream.duration_s.
std::vector<double> sample_grid(double duration_s, double sample_rate_hz);

struct TraceExperiment {
    std::size_t n_devices = 50;
    PulseStream stream;
    double p_on = 0.1;
    DeviceParams params;
    double sample_rate_hz = 100.0;
    std::size_t repeats = 100;
    std::uint64_t master_seed = 1;
};

/// Every repeat's trace; repeat r uses derive_seed(master_seed, {r}).
std::vector<std::vector<TraceSample>> simulate_trace_repeats(const TraceExperiment& exp);
std::vector<std::vector<TraceSample>> simulate_trace_repeats_serial(
    const TraceExperiment& exp);

struct MeanTraceSample {
    double t_s = 0.0;
    double mean_count_on = 0.0;
    double mean_current_uA = 0.0;

    friend bool operator==(const MeanTraceSample&, const MeanTraceSample&) = default;
};

/// Pointwise mean over repeats, accumulated in repeat order.
std::vector<MeanTraceSample> run_trace_experiment(const TraceExperiment& exp);

struct TraceCurve {
    double p_on = 0.0;
    double i_cc_uA = 0.0;
    double retention_median_s = 0.0;
    std::size_t repeats = 0;
    std::vector<MeanTraceSample> samples;
};

/// `t_s,count_on,current_uA,repeat_mean,p_on,i_cc_uA,retention_median_s`; the
/// repeat_mean column holds the number of repeats averaged into the row.
void write_mean_trace_csv(std::ostream& out, std::span<const TraceCurve> curves,
                          std::span<const std::string> comments = {});

/// Caps the worker count of the parallel kernels; n <= 0 restores the default.
void set_max_threads(int n);
int max_threads();

}  // namespace memdecide
