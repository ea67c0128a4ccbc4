// Stochastic compact model of one volatile 1T1R cell.
//
// A cell is OFF or ON. A pulse switches an OFF cell ON with a probability set
// by the pulse amplitude (normal CDF of the set-voltage distribution). An ON
// cell carries a scheduled expiry drawn from a lognormal retention
// distribution whose median depends on the compliance current; at or after
// the expiry the filament has dissolved and the cell reads OFF.
#pragma once

#include <variant>

#include "memdecide/rng.hpp"

namespace memdecide {

/// Set-voltage distribution, read as P_ON(v) = Phi((v - v_median) / v_spread).
struct SwitchingCurve {
    double v_median = 0.6;   // V
    double v_spread = 0.05;  // V, > 0

    friend bool operator==(const SwitchingCurve&, const SwitchingCurve&) = default;
};

/// Lognormal retention time: median_s * exp(sigma_log * Z).
struct RetentionDistribution {
    double median_s = 1.0;   // s, > 0
    double sigma_log = 0.5;  // >= 0; zero gives a deterministic retention

    friend bool operator==(const RetentionDistribution&,
                           const RetentionDistribution&) = default;
};

struct DeviceParams {
    double i_cc = 300.0;  // uA
    SwitchingCurve switching;
    RetentionDistribution retention;
    double i_on = 300.0;  // uA, current of an ON cell
    double i_off = 0.0;   // uA, leakage of an OFF cell

    /// ON current clamped at compliance, negligible OFF leakage.
    static DeviceParams at_compliance(double i_cc, SwitchingCurve switching,
                                      RetentionDistribution retention);

    friend bool operator==(const DeviceParams&, const DeviceParams&) = default;
};

struct DeviceOff {
    friend bool operator==(const DeviceOff&, const DeviceOff&) = default;
};

struct DeviceOn {
    double expiry;  // absolute time at which the filament dissolves

    friend bool operator==(const DeviceOn&, const DeviceOn&) = default;
};

using DeviceState = std::variant<DeviceOff, DeviceOn>;

inline bool is_on(const DeviceState& s) noexcept
{
    return std::holds_alternative<DeviceOn>(s);
}

/// Throws InvalidArgument on v_spread <= 0 or non-finite fields.
void validate(const SwitchingCurve& curve);
void validate(const RetentionDistribution& dist);
void validate(const DeviceParams& params);

/// Probability that a pulse of amplitude v_pulse turns an OFF cell ON.
double switching_probability(const SwitchingCurve& curve, double v_pulse);

/// Strictly positive retention sample. Exactly median_s when sigma_log == 0.
double sample_retention(const RetentionDistribution& dist, Rng& rng);

/// Caller contract: state has been relaxed to t. An ON cell is refreshed with
/// a new expiry. An OFF cell switches with probability P_ON(v_pulse).
DeviceState apply_pulse(const DeviceState& state, const DeviceParams& params,
                        double v_pulse, double t, Rng& rng);

/// apply_pulse with the switching probability already evaluated; used by the
/// synapse so the CDF is computed once per pulse instead of once per cell.
DeviceState apply_pulse_with_probability(const DeviceState& state, const DeviceParams& params,
                                         double p_on, double t, Rng& rng);

/// ON with t >= expiry becomes OFF; anything else is returned unchanged.
DeviceState relax(const DeviceState& state, double t) noexcept;

double read_current(const DeviceState& state, const DeviceParams& params) noexcept;

}  // namespace memdecide
