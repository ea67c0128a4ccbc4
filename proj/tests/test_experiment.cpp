#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "memdecide/error.hpp"
#include "memdecide/experiment.hpp"
#include "memdecide/stats.hpp"
#include "oracles.hpp"

using namespace memdecide;

namespace {
const SwitchingCurve kCurve{0.6, 0.05};

SweepGrid small_grid()
{
    SweepGrid g;
    g.durations_s = {0.5, 2.0};
    g.ratios = {{40, 20}, {2, 1}};
    g.device_counts = {5, 20};
    g.i_cc_values_uA = {100.0, 300.0};
    g.p_on_values = {0.01, 0.05};
    g.trials_per_point = 60;
    g.master_seed = 77;
    g.switching = kCurve;
    return g;
}

TraceExperiment small_trace()
{
    TraceExperiment e;
    e.n_devices = 30;
    e.stream = generate_periodic(20, 10.0);
    e.p_on = 0.1;
    e.params = DeviceParams::at_compliance(100.0, kCurve, {0.3, 0.5});
    e.sample_rate_hz = 25.0;
    e.repeats = 40;
    e.master_seed = 8;
    return e;
}
}  // namespace

TEST_CASE("invert_p_on")
{
    CHECK(invert_p_on(kCurve, 0.5) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::abs(switching_probability(kCurve, invert_p_on(kCurve, 0.02)) - 0.02) < 1e-9);

    const double v = invert_p_on(kCurve, 0.1);
    CHECK(v == doctest::Approx(0.535922421722770).epsilon(1e-12));
    const double by_bisection = oracle::bisect(
        [](double x) { return oracle::normal_cdf_by_quadrature(x, 0.6, 0.05); }, 0.1, 0.3, 0.9, 60);
    CHECK(std::abs(v - by_bisection) < 1e-8);

    for (double p : {1e-6, 0.001, 0.3, 0.77, 0.999999}) {
        CHECK(std::abs(switching_probability(kCurve, invert_p_on(kCurve, p)) - p) < 1e-9);
    }
    CHECK_THROWS_AS(invert_p_on(kCurve, 0.0), InvalidArgument);
    CHECK_THROWS_AS(invert_p_on(kCurve, 1.0), InvalidArgument);
    CHECK_THROWS_AS(invert_p_on(kCurve, 1.5), InvalidArgument);

    CHECK(amplitude_for_probability(kCurve, 0.0) == -std::numeric_limits<double>::infinity());
    CHECK(amplitude_for_probability(kCurve, 1.0) == std::numeric_limits<double>::infinity());
}

TEST_CASE("expected_on_count_no_decay")
{
    CHECK(expected_on_count_no_decay(50, 0.02, 50) == doctest::Approx(31.7915159956441).epsilon(1e-12));
    CHECK(expected_on_count_no_decay(50, 0.02, 50) ==
          doctest::Approx(oracle::on_count_by_recursion(50, 0.02, 50)).epsilon(1e-12));
    CHECK(expected_on_count_no_decay(17, 0.3, 0) == 0.0);
    CHECK(expected_on_count_no_decay(17, 1.0, 1) == 17.0);
    for (std::size_t k : {1u, 3u, 10u, 100u}) {
        CHECK(expected_on_count_no_decay(20, 0.07, k) ==
              doctest::Approx(oracle::on_count_by_recursion(20, 0.07, k)).epsilon(1e-12));
    }
}

TEST_CASE("Monte Carlo mean count matches the no-decay oracle")
{
    struct Case {
        std::size_t n;
        double p;
        std::size_t k;
    };
    const Case cases[] = {{50, 0.02, 50}, {50, 0.10, 50}, {10, 0.5, 3}, {100, 0.01, 100}, {20, 0.3, 10}};
    for (const auto& c : cases) {
        TraceExperiment e;
        e.n_devices = c.n;
        e.stream = generate_periodic(c.k, 10.0);
        e.p_on = c.p;
        e.params = DeviceParams::at_compliance(300.0, kCurve, {1e3, 0.0});
        e.sample_rate_hz = 1.0 / e.stream.duration_s;  // samples at 0 and at the end
        e.repeats = 2000;
        e.master_seed = c.n * 1000 + c.k;
        const auto m = run_trace_experiment(e);
        const double q = 1.0 - std::pow(1.0 - c.p, static_cast<double>(c.k));
        const double se = std::sqrt(static_cast<double>(c.n) * q * (1 - q) / 2000.0);
        CHECK(std::abs(m.back().mean_count_on - expected_on_count_no_decay(c.n, c.p, c.k)) < 3 * se);
    }
}

TEST_CASE("estimate_accuracy")
{
    TwoAfcConfig cfg;
    cfg.n_devices = 20;
    cfg.params = DeviceParams::at_compliance(270.0, kCurve, {0.8, 0.5});
    cfg.v_pulse = invert_p_on(kCurve, 0.05);
    cfg.spec_a = {40, 2.0};
    cfg.spec_b = {20, 2.0};

    SUBCASE("parallel equals serial")
    {
        CHECK(estimate_accuracy(cfg, 500, 3) == estimate_accuracy_serial(cfg, 500, 3));
        CHECK(estimate_accuracy(cfg, 100, 3, 250) == estimate_accuracy_serial(cfg, 100, 3, 250));
    }
    SUBCASE("thread count does not change results")
    {
        const auto all = estimate_accuracy(cfg, 300, 9);
        set_max_threads(1);
        const auto one = estimate_accuracy(cfg, 300, 9);
        set_max_threads(3);
        const auto three = estimate_accuracy(cfg, 300, 9);
        set_max_threads(0);
        CHECK(all == one);
        CHECK(all == three);
    }
    SUBCASE("agrees with run_trials")
    {
        const auto rs = run_trials(cfg, 200, 4);
        std::size_t correct = 0, ties = 0;
        for (const auto& r : rs) {
            correct += r.correct ? 1 : 0;
            ties += r.tie ? 1 : 0;
        }
        const auto pt = estimate_accuracy(cfg, 200, 4);
        CHECK(pt.n_correct == correct);
        CHECK(pt.n_ties == ties);
        CHECK(pt.accuracy == static_cast<double>(correct) / 200.0);
    }
    SUBCASE("trial offset splits a batch")
    {
        const auto full = run_trials(cfg, 40, 12);
        const auto tail = run_trials(cfg, 20, 12, 20);
        for (std::size_t i = 0; i < 20; ++i) {
            CHECK(tail[i].decision == full[20 + i].decision);
            CHECK(tail[i].i1 == full[20 + i].i1);
        }
    }
    SUBCASE("interval brackets the estimate")
    {
        const auto pt = estimate_accuracy(cfg, 300, 1);
        CHECK(pt.ci_low <= pt.accuracy);
        CHECK(pt.accuracy <= pt.ci_high);
        CHECK(pt.accuracy <= 1.0);
        const auto w = wilson_interval(pt.n_correct, pt.n_trials);
        CHECK(pt.ci_low == w.low);
        CHECK(pt.ci_high == w.high);
    }
    SUBCASE("short retention collapses to chance")
    {
        auto c = cfg;
        c.v_pulse = invert_p_on(kCurve, 0.01);
        c.params.retention = {0.02, 0.5};  // duration / 100
        const auto pt = estimate_accuracy(c, 1000, 2);
        CHECK(std::abs(pt.accuracy - 0.5) <= 0.05);
    }
}

TEST_CASE("sweep")
{
    const auto g = small_grid();
    const auto pts = sweep(g);
    REQUIRE(pts.size() == 32);

    SUBCASE("parallel equals serial")
    {
        CHECK(pts == sweep_serial(g));
    }
    SUBCASE("reproducible report bytes")
    {
        std::ostringstream a, b;
        write_report_csv(a, pts);
        write_report_csv(b, sweep(g));
        CHECK(a.str() == b.str());
    }
    SUBCASE("loop order and reported coordinates")
    {
        CHECK(pts[0].duration_s == 0.5);
        CHECK(pts[0].n_a == 40);
        CHECK(pts[0].n_devices == 5);
        CHECK(pts[0].i_cc_uA == 100.0);
        CHECK(pts[0].p_on == 0.01);
        CHECK(pts[1].p_on == 0.05);
        CHECK(pts[2].i_cc_uA == 300.0);
        CHECK(pts[4].n_devices == 20);
        CHECK(pts[8].n_a == 2);
        CHECK(pts[16].duration_s == 2.0);
    }
    SUBCASE("each cell equals a direct estimate")
    {
        const GridIndex idx{1, 0, 1, 0, 1};
        auto direct = estimate_accuracy(cell_config(g, idx), g.trials_per_point, cell_seed(g.master_seed, idx));
        direct.p_on = 0.05;
        CHECK(pts[16 + 4 + 1] == direct);
    }
    SUBCASE("degenerate grid")
    {
        SweepGrid one;
        one.durations_s = {2.0};
        one.ratios = {{40, 20}};
        one.device_counts = {20};
        one.i_cc_values_uA = {270.0};
        one.p_on_values = {0.01};
        one.trials_per_point = 200;
        one.master_seed = 5;
        one.switching = kCurve;
        const auto single = sweep(one);
        REQUIRE(single.size() == 1);
        auto direct = estimate_accuracy(cell_config(one, {}), 200, cell_seed(5, {}));
        direct.p_on = 0.01;
        CHECK(single[0] == direct);
    }
    SUBCASE("cell config follows the retention table")
    {
        const auto cfg = cell_config(g, {0, 0, 0, 1, 0});
        CHECK(cfg.params.retention == interpolate_retention(g.retention_table, 300.0));
        CHECK(cfg.params.i_on == 300.0);
        CHECK(cfg.n_devices == 5);
        CHECK(cfg.spec_a.n_pulses == 40);
        CHECK(cfg.spec_b.duration_s == 0.5);
    }
    SUBCASE("cell seeds are distinct")
    {
        CHECK(cell_seed(1, {0, 0, 0, 0, 0}) != cell_seed(1, {0, 0, 0, 0, 1}));
        CHECK(cell_seed(1, {0, 0, 0, 0, 1}) != cell_seed(1, {1, 0, 0, 0, 0}));
        CHECK(cell_seed(1, {}) != cell_seed(2, {}));
    }
    SUBCASE("validation")
    {
        auto bad = g;
        bad.ratios.clear();
        CHECK_THROWS_AS(sweep(bad), InvalidArgument);
        bad = g;
        bad.trials_per_point = 0;
        CHECK_THROWS_AS(validate(bad), InvalidArgument);
        bad = g;
        bad.p_on_values = {1.2};
        CHECK_THROWS_AS(validate(bad), InvalidArgument);
    }
}

TEST_CASE("accuracy does not grow with duration at fixed retention")
{
    SweepGrid g;
    g.durations_s = {1.0, 5.0, 20.0};
    g.ratios = {{40, 20}};
    g.device_counts = {50};
    g.i_cc_values_uA = {300.0};  // 1 s median in the default table
    g.p_on_values = {0.10};
    g.trials_per_point = 1000;
    g.master_seed = 31;
    g.switching = kCurve;
    const auto pts = sweep(g);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].ci_low <= pts[i - 1].ci_high);
}

TEST_CASE("long trials forget relative to short ones")
{
    // Refreshing ON cells can make 5 s beat 1 s at small N, but 20 s, far past
    // the 1 s retention, is always worse than both.
    SweepGrid g;
    g.durations_s = {1.0, 5.0, 20.0};
    g.ratios = {{40, 20}};
    g.device_counts = {5, 20, 50};
    g.i_cc_values_uA = {300.0};
    g.p_on_values = {0.01, 0.05};
    g.trials_per_point = 1000;
    g.master_seed = 32;
    g.switching = kCurve;
    const auto pts = sweep(g);
    for (std::size_t cell = 0; cell < 6; ++cell) {
        const auto& one = pts[cell];
        const auto& five = pts[6 + cell];
        const auto& twenty = pts[12 + cell];
        CHECK(twenty.ci_high < one.ci_low);
        CHECK(twenty.ci_high < five.ci_low);
    }
}

TEST_CASE("Wilson interval coverage against a Bernoulli simulator")
{
    Rng rng(2024);
    const double p = 0.9;
    const int reps = 2000, n = 200;
    int covered = 0;
    for (int r = 0; r < reps; ++r) {
        std::size_t k = 0;
        for (int i = 0; i < n; ++i) k += rng.bernoulli(p) ? 1 : 0;
        const auto w = wilson_interval(k, n);
        covered += (w.low <= p && p <= w.high) ? 1 : 0;
    }
    const double rate = static_cast<double>(covered) / reps;
    CHECK(rate > 0.93);
    CHECK(rate < 0.97);
}

TEST_CASE("trace experiment")
{
    const auto e = small_trace();
    SUBCASE("parallel equals serial")
    {
        CHECK(simulate_trace_repeats(e) == simulate_trace_repeats_serial(e));
    }
    SUBCASE("one repeat is a single synapse trace")
    {
        auto one = e;
        one.repeats = 1;
        const auto mean = run_trace_experiment(one);
        Rng rng(derive_seed(one.master_seed, {0}));
        Synapse s(one.n_devices, one.params);
        const auto samples = sample_grid(one.stream.duration_s, one.sample_rate_hz);
        const auto tr = s.trace(one.stream, invert_p_on(kCurve, 0.1), samples, rng);
        REQUIRE(mean.size() == tr.size());
        for (std::size_t i = 0; i < tr.size(); ++i) {
            CHECK(mean[i].t_s == tr[i].t_s);
            CHECK(mean[i].mean_count_on == static_cast<double>(tr[i].count_on));
            CHECK(mean[i].mean_current_uA == tr[i].current_uA);
        }
    }
    SUBCASE("mean is the pointwise average of the repeats")
    {
        const auto reps = simulate_trace_repeats(e);
        const auto mean = run_trace_experiment(e);
        for (std::size_t i = 0; i < mean.size(); ++i) {
            double c = 0;
            for (const auto& r : reps) c += static_cast<double>(r[i].count_on);
            CHECK(mean[i].mean_count_on == doctest::Approx(c / static_cast<double>(reps.size())));
        }
    }
    SUBCASE("repeats must be positive")
    {
        auto bad = e;
        bad.repeats = 0;
        CHECK_THROWS_AS(run_trace_experiment(bad), InvalidArgument);
    }
}

TEST_CASE("sample_grid")
{
    CHECK(sample_grid(1.0, 4.0) == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(sample_grid(0.9, 2.0) == std::vector<double>{0.0, 0.5});
    CHECK(sample_grid(5.0, 10.0).size() == 51);
}

TEST_CASE("report CSV")
{
    AccuracyPoint p;
    p.duration_s = 2;
    p.n_a = 40;
    p.n_b = 20;
    p.n_devices = 20;
    p.i_cc_uA = 270;
    p.p_on = 0.01;
    p.accuracy = 0.875;
    p.ci_low = 0.5;
    p.ci_high = 0.9;
    p.n_trials = 8;
    p.n_ties = 1;
    const std::vector<AccuracyPoint> pts{p};
    const std::vector<std::string> comments{"seed=1"};
    std::ostringstream out;
    write_report_csv(out, pts, comments);
    CHECK(out.str() ==
          "# seed=1\n"
          "duration_s,n_a,n_b,n_devices,i_cc_uA,p_on,accuracy,ci_low,ci_high,n_trials,n_ties\n"
          "2,40,20,20,270,0.01,0.875,0.5,0.9,8,1\n");
}
