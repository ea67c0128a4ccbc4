#include "memdecide/experiment.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "memdecide/error.hpp"
#include "memdecide/stats.hpp"

namespace memdecide {

double invert_p_on(const SwitchingCurve& curve, double p_target)
{
    validate(curve);
    if (!(p_target > 0.0 && p_target < 1.0)) {
        throw InvalidArgument("invert_p_on: target probability must lie in (0, 1), got " +
                              format_double(p_target));
    }
    return curve.v_median + curve.v_spread * normal_quantile(p_target);
}

double amplitude_for_probability(const SwitchingCurve& curve, double p)
{
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return invert_p_on(curve, p);
}

double expected_on_count_no_decay(std::size_t n, double p, std::size_t k)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidArgument("expected_on_count_no_decay: p must lie in [0, 1]");
    }
    return static_cast<double>(n) * (1.0 - std::pow(1.0 - p, static_cast<double>(k)));
}

// ---------------------------------------------------------------------------

namespace {

AccuracyPoint summarize(const TwoAfcConfig& cfg, std::size_t trials, std::size_t correct,
                        std::size_t ties)
{
    AccuracyPoint pt;
    pt.duration_s = cfg.spec_a.duration_s;
    pt.n_a = cfg.spec_a.n_pulses;
    pt.n_b = cfg.spec_b.n_pulses;
    pt.n_devices = cfg.n_devices;
    pt.i_cc_uA = cfg.params.i_cc;
    pt.p_on = switching_probability(cfg.params.switching, cfg.v_pulse);
    pt.n_trials = trials;
    pt.n_correct = correct;
    pt.n_ties = ties;
    pt.accuracy = static_cast<double>(correct) / static_cast<double>(trials);
    const auto ci = wilson_interval(correct, trials);
    pt.ci_low = ci.low;
    pt.ci_high = ci.high;
    return pt;
}

TrialResult seeded_trial(const TwoAfcConfig& cfg, std::uint64_t master_seed, std::size_t index)
{
    Rng rng(derive_seed(master_seed, {static_cast<std::uint64_t>(index)}));
    return run_trial(cfg, rng);
}

void check_trials(std::size_t trials)
{
    if (trials == 0) {
        throw InvalidArgument("estimate_accuracy: trials must be >= 1");
    }
}

}  // namespace

AccuracyPoint estimate_accuracy_serial(const TwoAfcConfig& cfg, std::size_t trials,
                                       std::uint64_t master_seed, std::size_t trial_offset)
{
    check_trials(trials);
    validate(cfg);
    std::size_t correct = 0;
    std::size_t ties = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        const auto r = seeded_trial(cfg, master_seed, trial_offset + i);
        correct += r.correct ? 1 : 0;
        ties += r.tie ? 1 : 0;
    }
    return summarize(cfg, trials, correct, ties);
}

AccuracyPoint estimate_accuracy(const TwoAfcConfig& cfg, std::size_t trials,
                                std::uint64_t master_seed, std::size_t trial_offset)
{
    check_trials(trials);
    validate(cfg);
    const auto n = static_cast<std::int64_t>(trials);
    std::size_t correct = 0;
    std::size_t ties = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : correct, ties)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto r = seeded_trial(cfg, master_seed, trial_offset + static_cast<std::size_t>(i));
        correct += r.correct ? 1 : 0;
        ties += r.tie ? 1 : 0;
    }
    return summarize(cfg, trials, correct, ties);
}

std::vector<TrialResult> run_trials(const TwoAfcConfig& cfg, std::size_t trials,
                                     std::uint64_t master_seed, std::size_t trial_offset)
{
    validate(cfg);
    std::vector<TrialResult> out(trials);
    const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            seeded_trial(cfg, master_seed, trial_offset + static_cast<std::size_t>(i));
    }
    return out;
}

// ---------------------------------------------------------------------------

void validate(const SweepGrid& grid)
{
    if (grid.durations_s.empty() || grid.ratios.empty() || grid.device_counts.empty() ||
        grid.i_cc_values_uA.empty() || grid.p_on_values.empty()) {
        throw InvalidArgument("sweep: every grid axis needs at least one value");
    }
    if (grid.trials_per_point == 0) {
        throw InvalidArgument("sweep: trials_per_point must be >= 1");
    }
    for (double p : grid.p_on_values) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InvalidArgument("sweep: p_on values must lie in [0, 1]");
        }
    }
    for (double d : grid.durations_s) {
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw InvalidArgument("sweep: durations must be > 0");
        }
    }
    for (auto n : grid.device_counts) {
        if (n == 0) throw InvalidArgument("sweep: device counts must be >= 1");
    }
    for (double icc : grid.i_cc_values_uA) {
        if (!(icc > 0.0)) throw InvalidArgument("sweep: i_cc values must be > 0");
    }
    if (grid.retention_table.empty()) {
        throw InvalidArgument("sweep: empty retention table");
    }
    validate(grid.switching);
}

std::uint64_t cell_seed(std::uint64_t master_seed, const GridIndex& index)
{
    return derive_seed(master_seed, {index.duration, index.ratio, index.devices, index.i_cc,
                                     index.p_on});
}

TwoAfcConfig cell_config(const SweepGrid& grid, const GridIndex& index)
{
    TwoAfcConfig cfg;
    const double duration = grid.durations_s.at(index.duration);
    const auto [n_a, n_b] = grid.ratios.at(index.ratio);
    const double i_cc = grid.i_cc_values_uA.at(index.i_cc);
    cfg.n_devices = grid.device_counts.at(index.devices);
    cfg.params = DeviceParams::at_compliance(
        i_cc, grid.switching, interpolate_retention(grid.retention_table, i_cc));
    cfg.v_pulse = amplitude_for_probability(grid.switching, grid.p_on_values.at(index.p_on));
    cfg.spec_a = {n_a, duration};
    cfg.spec_b = {n_b, duration};
    return cfg;
}

namespace {

std::vector<GridIndex> enumerate(const SweepGrid& grid)
{
    std::vector<GridIndex> cells;
    for (std::size_t d = 0; d < grid.durations_s.size(); ++d)
        for (std::size_t r = 0; r < grid.ratios.size(); ++r)
            for (std::size_t n = 0; n < grid.device_counts.size(); ++n)
                for (std::size_t c = 0; c < grid.i_cc_values_uA.size(); ++c)
                    for (std::size_t p = 0; p < grid.p_on_values.size(); ++p)
                        cells.push_back({d, r, n, c, p});
    return cells;
}

}  // namespace

std::vector<AccuracyPoint> sweep_serial(const SweepGrid& grid)
{
    validate(grid);
    std::vector<AccuracyPoint> out;
    for (const auto& idx : enumerate(grid)) {
        auto pt = estimate_accuracy_serial(cell_config(grid, idx), grid.trials_per_point,
                                           cell_seed(grid.master_seed, idx), 0);
        pt.p_on = grid.p_on_values[idx.p_on];
        out.push_back(pt);
    }
    return out;
}

std::vector<AccuracyPoint> sweep(const SweepGrid& grid)
{
    validate(grid);
    const auto cells = enumerate(grid);
    std::vector<TwoAfcConfig> configs;
    std::vector<std::uint64_t> seeds;
    for (const auto& idx : cells) {
        configs.push_back(cell_config(grid, idx));
        seeds.push_back(cell_seed(grid.master_seed, idx));
    }

    // One flat (cell, trial) index space so small grids still fill every
    // thread; per-trial outcomes are reduced afterwards in grid order.
    const std::size_t per_cell = grid.trials_per_point;
    const auto total = static_cast<std::int64_t>(cells.size() * per_cell);
    std::vector<unsigned char> correct(static_cast<std::size_t>(total));
    std::vector<unsigned char> tie(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t k = 0; k < total; ++k) {
        const auto flat = static_cast<std::size_t>(k);
        const std::size_t cell = flat / per_cell;
        const auto r = seeded_trial(configs[cell], seeds[cell], flat % per_cell);
        correct[flat] = r.correct ? 1 : 0;
        tie[flat] = r.tie ? 1 : 0;
    }

    std::vector<AccuracyPoint> out;
    out.reserve(cells.size());
    for (std::size_t cell = 0; cell < cells.size(); ++cell) {
        std::size_t c = 0;
        std::size_t t = 0;
        for (std::size_t i = cell * per_cell; i < (cell + 1) * per_cell; ++i) {
            c += correct[i];
            t += tie[i];
        }
        auto pt = summarize(configs[cell], per_cell, c, t);
        pt.p_on = grid.p_on_values[cells[cell].p_on];
        out.push_back(pt);
    }
    return out;
}

void write_report_csv(std::ostream& out, std::span<const AccuracyPoint> points,
                      std::span<const std::string> comments)
{
    for (const auto& c : comments) {
        out << "# " << c << '\n';
    }
    out << "duration_s,n_a,n_b,n_devices,i_cc_uA,p_on,accuracy,ci_low,ci_high,n_trials,n_ties\n";
    for (const auto& p : points) {
        out << format_double(p.duration_s) << ',' << p.n_a << ',' << p.n_b << ','
            << p.n_devices << ',' << format_double(p.i_cc_uA) << ',' << format_double(p.p_on)
            << ',' << format_double(p.accuracy) << ',' << format_double(p.ci_low) << ','
            << format_double(p.ci_high) << ',' << p.n_trials << ',' << p.n_ties << '\n';
    }
}

// ---------------------------------------------------------------------------

std::vector<double> sample_grid(double duration_s, double sample_rate_hz)
{
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
        throw InvalidArgument("sample_rate_hz must be > 0");
    }
    if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
        throw InvalidArgument("trace duration must be >= 0");
    }
    std::vector<double> times;
    for (std::size_t k = 0;; ++k) {
        const double t = static_cast<double>(k) / sample_rate_hz;
        if (t > duration_s) break;
        times.push_back(t);
    }
    return times;
}

namespace {

void check_trace_experiment(const TraceExperiment& exp)
{
    if (exp.repeats == 0) {
        throw InvalidArgument("trace experiment: repeats must be >= 1");
    }
    if (!(exp.p_on >= 0.0 && exp.p_on <= 1.0)) {
        throw InvalidArgument("trace experiment: p_on must lie in [0, 1]");
    }
    validate(exp.params);
}

std::vector<TraceSample> one_repeat(const TraceExperiment& exp, double v_pulse,
                                    std::span<const double> samples, std::size_t r)
{
    Rng rng(derive_seed(exp.master_seed, {static_cast<std::uint64_t>(r)}));
    Synapse syn(exp.n_devices, exp.params);
    return syn.trace(exp.stream, v_pulse, samples, rng);
}

}  // namespace

std::vector<std::vector<TraceSample>> simulate_trace_repeats_serial(const TraceExperiment& exp)
{
    check_trace_experiment(exp);
    const double v = amplitude_for_probability(exp.params.switching, exp.p_on);
    const auto samples = sample_grid(exp.stream.duration_s, exp.sample_rate_hz);
    std::vector<std::vector<TraceSample>> out;
    out.reserve(exp.repeats);
    for (std::size_t r = 0; r < exp.repeats; ++r) {
        out.push_back(one_repeat(exp, v, samples, r));
    }
    return out;
}

std::vector<std::vector<TraceSample>> simulate_trace_repeats(const TraceExperiment& exp)
{
    check_trace_experiment(exp);
    const double v = amplitude_for_probability(exp.params.switching, exp.p_on);
    const auto samples = sample_grid(exp.stream.duration_s, exp.sample_rate_hz);
    std::vector<std::vector<TraceSample>> out(exp.repeats);
    const auto n = static_cast<std::int64_t>(exp.repeats);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t r = 0; r < n; ++r) {
        out[static_cast<std::size_t>(r)] = one_repeat(exp, v, samples, static_cast<std::size_t>(r));
    }
    return out;
}

std::vector<MeanTraceSample> run_trace_experiment(const TraceExperiment& exp)
{
    const auto repeats = simulate_trace_repeats(exp);
    const auto& first = repeats.front();
    std::vector<MeanTraceSample> mean(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        mean[i].t_s = first[i].t_s;
    }
    for (const auto& trace : repeats) {
        for (std::size_t i = 0; i < trace.size(); ++i) {
            mean[i].mean_count_on += static_cast<double>(trace[i].count_on);
            mean[i].mean_current_uA += trace[i].current_uA;
        }
    }
    const double inv = 1.0 / static_cast<double>(repeats.size());
    for (auto& m : mean) {
        m.mean_count_on *= inv;
        m.mean_current_uA *= inv;
    }
    return mean;
}

void write_mean_trace_csv(std::ostream& out, std::span<const TraceCurve> curves,
                          std::span<const std::string> comments)
{
    for (const auto& c : comments) {
        out << "# " << c << '\n';
    }
    out << "t_s,count_on,current_uA,repeat_mean,p_on,i_cc_uA,retention_median_s\n";
    for (const auto& curve : curves) {
        for (const auto& s : curve.samples) {
            out << format_double(s.t_s) << ',' << format_double(s.mean_count_on) << ','
                << format_double(s.mean_current_uA) << ',' << curve.repeats << ','
                << format_double(curve.p_on) << ',' << format_double(curve.i_cc_uA) << ','
                << format_double(curve.retention_median_s)
                << '\n';
        }
    }
}

// ---------------------------------------------------------------------------

void set_max_threads(int n)
{
#ifdef _OPENMP
    static const int default_threads = omp_get_max_threads();
    omp_set_num_threads(n > 0 ? n : default_threads);
#else
    (void)n;
#endif
}

int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace memdecide
