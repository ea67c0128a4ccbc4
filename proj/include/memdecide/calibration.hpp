// Fitting the device model to measured pulsed-characterization data.
#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "memdecide/device.hpp"
#include "memdecide/rng.hpp"

namespace memdecide {

struct SwitchingRecord {
    double v_pulse = 0.0;  // V
    bool switched = false;
};

struct RetentionRecord {
    double i_cc_uA = 0.0;
    double retention_s = 0.0;
};

struct RetentionEntry {
    double i_cc_uA = 0.0;
    RetentionDistribution retention;

    friend bool operator==(const RetentionEntry&, const RetentionEntry&) = default;
};

using RetentionTable = std::vector<RetentionEntry>;

/// Placeholder table: 10 ms at 10 uA, 100 ms at 100 uA, 1 s at 300 uA,
/// sigma_log 0.5 everywhere. Not measured data.
RetentionTable default_retention_table();

/// log(median) and sigma_log are interpolated linearly in log(i_cc);
/// queries outside the table clamp to the end entries.
/// Throws InvalidArgument on an empty table.
RetentionDistribution interpolate_retention(std::span<const RetentionEntry> table,
                                            double i_cc_uA);

struct SwitchingFit {
    SwitchingCurve curve;
    double v_median_se = 0.0;
    double v_spread_se = 0.0;
    double log_likelihood = 0.0;
    std::size_t iterations = 0;
    bool converged = false;      // false means the grid-search fallback was used
    std::size_t n_records = 0;
};

/// Bernoulli log-likelihood of the records under a normal-CDF switching curve.
double switching_log_likelihood(std::span<const SwitchingRecord> records,
                                const SwitchingCurve& curve);

/// Maximum-likelihood probit fit. Needs >= 10 records with both outcomes
/// present and non-constant amplitudes, else DegenerateDataError.
SwitchingFit fit_switching_curve(std::span<const SwitchingRecord> records);

struct RetentionFit {
    RetentionTable table;
    std::vector<std::size_t> group_sizes;  // parallel to table
    std::vector<std::string> warnings;
};

inline constexpr std::size_t kMinRetentionSamples = 5;

/// Groups by exact i_cc value; median = sample median, sigma_log = sample SD
/// (n - 1) of log-values. Non-monotone medians produce a warning only.
/// Throws DegenerateDataError for a group with fewer than 5 samples.
RetentionFit fit_retention(std::span<const RetentionRecord> records);

/// Synthetic measurements drawn from a known model, for fixtures and
/// round-trip checks: amplitudes uniform on [v_lo, v_hi), outcome Bernoulli
/// with the curve's switching probability.
std::vector<SwitchingRecord> synthesize_switching_records(const SwitchingCurve& curve,
                                                          std::size_t n, double v_lo,
                                                          double v_hi, Rng& rng);

/// n retention samples at one compliance current.
std::vector<RetentionRecord> synthesize_retention_records(double i_cc_uA,
                                                          const RetentionDistribution& dist,
                                                          std::size_t n, Rng& rng);

/// Header `v_pulse_V,switched`, switched in {0,1}.
std::vector<SwitchingRecord> read_switching_csv(std::istream& in);
void write_switching_csv(std::ostream& out, std::span<const SwitchingRecord> records);

/// Header `i_cc_uA,retention_s`.
std::vector<RetentionRecord> read_retention_csv(std::istream& in);
void write_retention_csv(std::ostream& out, std::span<const RetentionRecord> records);

struct ParamDeck {
    SwitchingCurve switching;
    RetentionTable retention_table;
    std::string provenance;

    friend bool operator==(const ParamDeck&, const ParamDeck&) = default;
};

/// JSON text with a fixed key order; doubles are written in shortest
/// round-trip form so read_deck(write_deck(d)) == d.
void write_deck(std::ostream& out, const ParamDeck& deck);
ParamDeck read_deck(std::istream& in);

}  // namespace memdecide
