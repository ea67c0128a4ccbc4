#include "memdecide/device.hpp"

#include <cmath>
#include <string>

#include "memdecide/error.hpp"
#include "memdecide/stats.hpp"

namespace memdecide {

DeviceParams DeviceParams::at_compliance(double i_cc, SwitchingCurve switching,
                                         RetentionDistribution retention)
{
    DeviceParams p;
    p.i_cc = i_cc;
    p.switching = switching;
    p.retention = retention;
    p.i_on = i_cc;
    p.i_off = 0.0;
    return p;
}

void validate(const SwitchingCurve& curve)
{
    if (!std::isfinite(curve.v_median)) {
        throw InvalidArgument("switching curve: v_median must be finite");
    }
    if (!(curve.v_spread > 0.0) || !std::isfinite(curve.v_spread)) {
        throw InvalidArgument("switching curve: v_spread must be > 0, got " +
                              std::to_string(curve.v_spread));
    }
}

void validate(const RetentionDistribution& dist)
{
    if (!(dist.median_s > 0.0) || !std::isfinite(dist.median_s)) {
        throw InvalidArgument("retention: median_s must be > 0, got " +
                              std::to_string(dist.median_s));
    }
    if (!(dist.sigma_log >= 0.0) || !std::isfinite(dist.sigma_log)) {
        throw InvalidArgument("retention: sigma_log must be >= 0, got " +
                              std::to_string(dist.sigma_log));
    }
}

void validate(const DeviceParams& params)
{
    validate(params.switching);
    validate(params.retention);
    if (!(params.i_cc > 0.0)) {
        throw InvalidArgument("device: i_cc must be > 0");
    }
    if (!(params.i_off >= 0.0) || !(params.i_on > params.i_off) || !std::isfinite(params.i_on)) {
        throw InvalidArgument("device: need i_on > i_off >= 0");
    }
}

double switching_probability(const SwitchingCurve& curve, double v_pulse)
{
    validate(curve);
    return normal_cdf((v_pulse - curve.v_median) / curve.v_spread);
}

double sample_retention(const RetentionDistribution& dist, Rng& rng)
{
    if (dist.sigma_log == 0.0) {
        return dist.median_s;
    }
    const double r = dist.median_s * std::exp(dist.sigma_log * rng.normal());
    // exp() can underflow for absurd sigma; keep the sample strictly positive.
    return r > 0.0 ? r : std::nextafter(0.0, 1.0);
}

DeviceState apply_pulse(const DeviceState& state, const DeviceParams& params, double v_pulse,
                        double t, Rng& rng)
{
    return apply_pulse_with_probability(
        state, params, switching_probability(params.switching, v_pulse), t, rng);
}

DeviceState apply_pulse_with_probability(const DeviceState& state, const DeviceParams& params,
                                         double p_on, double t, Rng& rng)
{
    if (!is_on(state) && !rng.bernoulli(p_on)) {
        return DeviceOff{};
    }
    double expiry = t + sample_retention(params.retention, rng);
    if (!(expiry > t)) {
        // Retention far below the ulp of t.
        expiry = std::nextafter(t, INFINITY);
    }
    return DeviceOn{expiry};
}

DeviceState relax(const DeviceState& state, double t) noexcept
{
    if (const auto* on = std::get_if<DeviceOn>(&state); on != nullptr && t >= on->expiry) {
        return DeviceOff{};
    }
    return state;
}

double read_current(const DeviceState& state, const DeviceParams& params) noexcept
{
    return is_on(state) ? params.i_on : params.i_off;
}

}  // namespace memdecide
