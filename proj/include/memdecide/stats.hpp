// Small numeric helpers shared by the model, the harness and calibration.
#pragma once

#include <cstddef>
#include <string>

namespace memdecide {

/// Standard normal CDF, accurate in both tails (erfc based).
double normal_cdf(double z);

/// log(Phi(z)) without underflow for large negative z.
double log_normal_cdf(double z);

/// Standard normal density.
double normal_pdf(double z);

/// Inverse of normal_cdf on (0, 1). Rational approximation polished with
/// Halley steps; absolute error in p below 1e-15 over the open interval.
double normal_quantile(double p);

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for a binomial proportion. z defaults to the 95%
/// two-sided quantile.
Interval wilson_interval(std::size_t successes, std::size_t trials,
                         double z = 1.959963984540054);

/// Shortest decimal text that round-trips to the same double ("." separator).
std::string format_double(double value);

}  // namespace memdecide
