#include "memdecide/synapse.hpp"

#include <algorithm>
#include <string>

#include "memdecide/error.hpp"
#include "memdecide/stats.hpp"

namespace memdecide {

Synapse::Synapse(std::size_t n, const DeviceParams& params)
    : params_(params), states_(n, DeviceOff{})
{
    if (n == 0) {
        throw InvalidArgument("synapse: needs at least one device");
    }
    validate(params_);
}

void Synapse::advance_to(double t)
{
    if (t < last_event_time_) {
        throw TimeOrderError("synapse: event at t=" + format_double(t) +
                             " precedes last event at t=" + format_double(last_event_time_));
    }
    for (auto& s : states_) {
        s = relax(s, t);
    }
    last_event_time_ = t;
}

void Synapse::stimulate(double t, double v_pulse, Rng& rng)
{
    advance_to(t);
    const double p_on = switching_probability(params_.switching, v_pulse);
    for (auto& s : states_) {
        s = apply_pulse_with_probability(s, params_, p_on, t, rng);
    }
}

SynapseReading Synapse::read(double t)
{
    advance_to(t);
    const std::size_t on = count_on();
    return {on, current_for(on)};
}

std::size_t Synapse::count_on() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(states_.begin(), states_.end(), [](const DeviceState& s) { return is_on(s); }));
}

std::vector<TraceSample> Synapse::trace(const PulseStream& stream, double v_pulse,
                                        std::span<const double> sample_times, Rng& rng)
{
    if (!std::is_sorted(stream.times.begin(), stream.times.end())) {
        throw InvalidArgument("trace: pulse times are not sorted");
    }
    if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
        throw InvalidArgument("trace: sample times are not sorted");
    }
    std::vector<TraceSample> out;
    out.reserve(sample_times.size());
    auto pulse = stream.times.begin();
    for (double ts : sample_times) {
        for (; pulse != stream.times.end() && *pulse <= ts; ++pulse) {
            stimulate(*pulse, v_pulse, rng);
        }
        const auto r = read(ts);
        out.push_back({ts, r.count_on, r.current_uA});
    }
    return out;
}

void write_trace_csv(std::ostream& out, std::span<const TraceSample> trace)
{
    out << "t_s,count_on,current_uA\n";
    for (const auto& s : trace) {
        out << format_double(s.t_s) << ',' << s.count_on << ',' << format_double(s.current_uA)
            << '\n';
    }
}

}  // namespace memdecide
