#include "memdecide/stream.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csv.hpp"
#include "memdecide/error.hpp"
#include "memdecide/stats.hpp"

namespace memdecide {

PulseStream generate_random(const StreamSpec& spec, Rng& rng)
{
    if (!(spec.duration_s > 0.0) || !std::isfinite(spec.duration_s)) {
        throw InvalidArgument("stream: duration_s must be > 0");
    }
    PulseStream s;
    s.duration_s = spec.duration_s;
    s.times.reserve(spec.n_pulses);
    for (std::size_t i = 0; i < spec.n_pulses; ++i) {
        s.times.push_back(rng.uniform(0.0, spec.duration_s));
    }
    std::sort(s.times.begin(), s.times.end());
    return s;
}

PulseStream generate_periodic(std::size_t n_pulses, double rate_hz, double start_s)
{
    if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
        throw InvalidArgument("periodic stream: rate_hz must be > 0");
    }
    if (!(start_s >= 0.0)) {
        throw InvalidArgument("periodic stream: start_s must be >= 0");
    }
    PulseStream s;
    s.times.reserve(n_pulses);
    for (std::size_t k = 0; k < n_pulses; ++k) {
        s.times.push_back(start_s + static_cast<double>(k) / rate_hz);
    }
    const double last = n_pulses == 0 ? start_s : s.times.back();
    s.duration_s = last + 1.0 / rate_hz;
    return s;
}

void write_stream_csv(std::ostream& out, const PulseStream& stream)
{
    out << "t_s\n";
    for (double t : stream.times) {
        out << format_double(t) << '\n';
    }
}

PulseStream read_stream_csv(std::istream& in, double duration_s)
{
    if (!(duration_s > 0.0)) {
        throw InvalidArgument("stream replay: duration_s must be > 0");
    }
    PulseStream s;
    s.duration_s = duration_s;
    for (const auto& row : csv::read_table(in, "t_s")) {
        const auto line_no = static_cast<std::size_t>(std::stoul(row[1]));
        const double t = csv::parse_double(row[0], line_no);
        if (!(t >= 0.0 && t < duration_s)) {
            throw FormatError("line " + row[1] + ": pulse time outside [0, duration)");
        }
        if (!s.times.empty() && t < s.times.back()) {
            throw FormatError("line " + row[1] + ": pulse times must be sorted");
        }
        s.times.push_back(t);
    }
    return s;
}

}  // namespace memdecide
