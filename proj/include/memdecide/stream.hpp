// Stimulus generators: random 2AFC streams and periodic characterization trains.
#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <vector>

#include "memdecide/rng.hpp"

namespace memdecide {

struct StreamSpec {
    std::size_t n_pulses = 0;
    double duration_s = 1.0;
};

struct PulseStream {
    std::vector<double> times;  // sorted, each in [0, duration_s)
    double duration_s = 0.0;

    std::size_t size() const noexcept { return times.size(); }
    bool empty() const noexcept { return times.empty(); }
};

/// n_pulses i.i.d. uniform times on [0, duration_s), sorted.
PulseStream generate_random(const StreamSpec& spec, Rng& rng);

/// start_s + k / rate_hz for k = 0..n_pulses-1. The window ends one period
/// after the last pulse so every time lies inside [0, duration_s).
PulseStream generate_periodic(std::size_t n_pulses, double rate_hz, double start_s = 0.0);

/// CSV with a single `t_s` column.
void write_stream_csv(std::ostream& out, const PulseStream& stream);

/// Reads a `t_s` CSV. Times must be sorted and inside [0, duration_s).
PulseStream read_stream_csv(std::istream& in, double duration_s);

}  // namespace memdecide
