// Independent reference computations used only by the tests. Nothing here
// calls into the code paths it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000)
{
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return s * h / 3.0;
}

inline double gaussian_density(double x, double mean, double sd)
{
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

/// Normal CDF by quadrature of the density from mean - 12 sd.
inline double normal_cdf_by_quadrature(double x, double mean, double sd)
{
    const double lo = mean - 12.0 * sd;
    if (x <= lo) return 0.0;
    return simpson([&](double t) { return gaussian_density(t, mean, sd); }, lo, x);
}

/// Root of a monotone increasing f on [lo, hi] by bisection.
inline double bisect(const std::function<double(double)>& f, double target, double lo, double hi,
                     int iters = 200)
{
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Expected ON count after k pulses, no relaxation, by iterating the
/// per-device probability recursion q_{j+1} = q_j + (1 - q_j) p.
inline double on_count_by_recursion(std::size_t n, double p, std::size_t k)
{
    double q = 0.0;
    for (std::size_t j = 0; j < k; ++j) q = q + (1.0 - q) * p;
    return static_cast<double>(n) * q;
}

/// Kolmogorov-Smirnov statistic of samples against Uniform(0, 1).
inline double ks_uniform(std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(xs[i] - lo), std::abs(hi - xs[i])});
    }
    return d;
}

struct LineFit {
    double slope;
    double intercept;
    double r2;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (slope * x[i] + intercept);
        ss_res += r * r;
    }
    return {slope, intercept, 1.0 - ss_res / syy};
}

struct MeanVar {
    double mean;
    double var;  // sample variance (n - 1)
};

inline MeanVar mean_var(const std::vector<double>& xs)
{
    double m = 0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0;
    for (double x : xs) v += (x - m) * (x - m);
    return {m, v / static_cast<double>(xs.size() - 1)};
}

}  // namespace oracle
