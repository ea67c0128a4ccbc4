#include "memdecide/network.hpp"

#include <cmath>

#include "memdecide/error.hpp"
#include "memdecide/stats.hpp"
#include "memdecide/synapse.hpp"

namespace memdecide {

std::string_view to_string(Choice c) noexcept
{
    return c == Choice::A ? "A" : "B";
}

void validate(const TwoAfcConfig& cfg)
{
    if (cfg.n_devices == 0) {
        throw InvalidArgument("2AFC: n_devices must be >= 1");
    }
    if (!(cfg.spec_a.duration_s > 0.0) || !std::isfinite(cfg.spec_a.duration_s)) {
        throw InvalidArgument("2AFC: duration_s must be > 0");
    }
    if (cfg.spec_a.duration_s != cfg.spec_b.duration_s) {
        throw InvalidArgument("2AFC: both streams must share one duration");
    }
    if (std::isnan(cfg.v_pulse)) {
        throw InvalidArgument("2AFC: v_pulse is NaN");
    }
    validate(cfg.params);
}

Decision decide(double i1, double i2, Rng& rng)
{
    if (i1 > i2) return {Choice::A, false};
    if (i1 < i2) return {Choice::B, false};
    return {rng.bernoulli(0.5) ? Choice::A : Choice::B, true};
}

TrialResult run_trial(const TwoAfcConfig& cfg, Rng& rng)
{
    validate(cfg);
    const PulseStream a = generate_random(cfg.spec_a, rng);
    const PulseStream b = generate_random(cfg.spec_b, rng);

    Synapse syn_a(cfg.n_devices, cfg.params);
    Synapse syn_b(cfg.n_devices, cfg.params);

    // Merge the two timelines; A goes first on equal timestamps.
    auto ia = a.times.begin();
    auto ib = b.times.begin();
    while (ia != a.times.end() || ib != b.times.end()) {
        if (ib == b.times.end() || (ia != a.times.end() && *ia <= *ib)) {
            syn_a.stimulate(*ia++, cfg.v_pulse, rng);
        } else {
            syn_b.stimulate(*ib++, cfg.v_pulse, rng);
        }
    }

    const double t_end = cfg.spec_a.duration_s;
    const auto ra = syn_a.read(t_end);
    const auto rb = syn_b.read(t_end);
    const auto d = decide(ra.current_uA, rb.current_uA, rng);

    TrialResult r;
    r.decision = d.choice;
    r.tie = d.tie;
    r.i1 = ra.current_uA;
    r.i2 = rb.current_uA;
    r.count1 = ra.count_on;
    r.count2 = rb.count_on;
    if (cfg.spec_a.n_pulses == cfg.spec_b.n_pulses) {
        r.correct = true;
    } else {
        const Choice truth = cfg.spec_a.n_pulses > cfg.spec_b.n_pulses ? Choice::A : Choice::B;
        r.correct = d.choice == truth;
    }
    return r;
}

void write_trial_header(std::ostream& out)
{
    out << "trial,decision,correct,i1_uA,i2_uA,count1,count2,tie\n";
}

void write_trial_row(std::ostream& out, std::size_t trial, const TrialResult& r)
{
    out << trial << ',' << to_string(r.decision) << ',' << (r.correct ? 1 : 0) << ','
        << format_double(r.i1) << ',' << format_double(r.i2) << ',' << r.count1 << ','
        << r.count2 << ',' << (r.tie ? 1 : 0) << '\n';
}

}  // namespace memdecide
