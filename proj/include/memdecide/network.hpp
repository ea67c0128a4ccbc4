// Two-alternative forced choice network: two input channels, two equal-size
// synapses, and an ideal sign comparator on i1 - i2 at the end of the trial.
#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <string_view>
#include <utility>

#include "memdecide/device.hpp"
#include "memdecide/rng.hpp"
#include "memdecide/stream.hpp"

namespace memdecide {

enum class Choice { A, B };

std::string_view to_string(Choice c) noexcept;

struct TwoAfcConfig {
    std::size_t n_devices = 20;
    DeviceParams params;
    double v_pulse = 0.6;
    StreamSpec spec_a;
    StreamSpec spec_b;
};

/// Throws InvalidArgument on mismatched durations, n_devices == 0 or bad params.
void validate(const TwoAfcConfig& cfg);

struct TrialResult {
    Choice decision = Choice::A;
    bool correct = false;
    double i1 = 0.0;  // uA
    double i2 = 0.0;  // uA
    std::size_t count1 = 0;
    std::size_t count2 = 0;
    bool tie = false;
};

struct Decision {
    Choice choice;
    bool tie;
};

/// A if i1 > i2, B if i1 < i2, a fair coin from rng otherwise.
Decision decide(double i1, double i2, Rng& rng);

/// One trial: draw stream A then stream B from rng, replay the merged timeline
/// (A first on equal timestamps), read both synapses at duration_s and decide.
/// With n_a == n_b either choice counts as correct.
TrialResult run_trial(const TwoAfcConfig& cfg, Rng& rng);

/// `trial,decision,correct,i1_uA,i2_uA,count1,count2,tie`
void write_trial_header(std::ostream& out);
void write_trial_row(std::ostream& out, std::size_t trial, const TrialResult& r);

}  // namespace memdecide
