// Multi-device parallel synapse: N cells sharing both electrodes.
#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "memdecide/device.hpp"
#include "memdecide/rng.hpp"
#include "memdecide/stream.hpp"

namespace memdecide {

struct SynapseReading {
    std::size_t count_on = 0;
    double current_uA = 0.0;

    friend bool operator==(const SynapseReading&, const SynapseReading&) = default;
};

struct TraceSample {
    double t_s = 0.0;
    std::size_t count_on = 0;
    double current_uA = 0.0;

    friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

class Synapse {
public:
    /// All cells OFF at t = 0. Throws InvalidArgument for n == 0.
    Synapse(std::size_t n, const DeviceParams& params);

    /// Relax every cell to t, then pulse each one independently.
    /// Throws TimeOrderError if t precedes the last processed event.
    void stimulate(double t, double v_pulse, Rng& rng);

    /// Relax to t and return the ON count and summed current.
    SynapseReading read(double t);

    /// Pulses and samples in merged chronological order; a pulse at the same
    /// instant as a sample is applied first. Throws InvalidArgument on
    /// unsorted input.
    std::vector<TraceSample> trace(const PulseStream& stream, double v_pulse,
                                   std::span<const double> sample_times, Rng& rng);

    std::size_t size() const noexcept { return states_.size(); }
    double last_event_time() const noexcept { return last_event_time_; }
    const DeviceParams& params() const noexcept { return params_; }
    std::span<const DeviceState> states() const noexcept { return states_; }

    /// Cells currently flagged ON (not relaxed; call read() for a timed view).
    std::size_t count_on() const noexcept;

    double current_for(std::size_t count_on) const noexcept
    {
        return static_cast<double>(count_on) * params_.i_on +
               static_cast<double>(states_.size() - count_on) * params_.i_off;
    }

private:
    void advance_to(double t);

    DeviceParams params_;
    std::vector<DeviceState> states_;
    double last_event_time_ = 0.0;
};

/// `t_s,count_on,current_uA`
void write_trace_csv(std::ostream& out, std::span<const TraceSample> trace);

}  // namespace memdecide
