#include "memdecide/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

#include <json.hpp>

#include "csv.hpp"
#include "memdecide/error.hpp"
#include "memdecide/stats.hpp"

namespace memdecide {

RetentionTable default_retention_table()
{
    return {
        {10.0, {0.01, 0.5}},
        {100.0, {0.1, 0.5}},
        {300.0, {1.0, 0.5}},
    };
}

RetentionDistribution interpolate_retention(std::span<const RetentionEntry> table,
                                            double i_cc_uA)
{
    if (table.empty()) {
        throw InvalidArgument("interpolate_retention: empty table");
    }
    if (!(i_cc_uA > 0.0)) {
        throw InvalidArgument("interpolate_retention: i_cc must be > 0");
    }
    if (i_cc_uA <= table.front().i_cc_uA) return table.front().retention;
    if (i_cc_uA >= table.back().i_cc_uA) return table.back().retention;

    const auto hi = std::upper_bound(
        table.begin(), table.end(), i_cc_uA,
        [](double x, const RetentionEntry& e) { return x < e.i_cc_uA; });
    const auto lo = hi - 1;
    if (lo->i_cc_uA == i_cc_uA) return lo->retention;

    const double w = (std::log(i_cc_uA) - std::log(lo->i_cc_uA)) /
                     (std::log(hi->i_cc_uA) - std::log(lo->i_cc_uA));
    const double log_median = (1.0 - w) * std::log(lo->retention.median_s) +
                              w * std::log(hi->retention.median_s);
    return {std::exp(log_median),
            (1.0 - w) * lo->retention.sigma_log + w * hi->retention.sigma_log};
}

// ---------------------------------------------------------------------------
// Switching curve: probit regression z = a + b v, with v_median = -a/b and
// v_spread = 1/b.

namespace {

struct ProbitTerms {
    double loglik = 0.0;
    std::array<double, 2> grad{};
    std::array<double, 3> hess{};  // (aa, ab, bb)
};

// Inverse Mills ratio phi(z)/Phi(z), stable for large negative z.
double mills(double z)
{
    return std::exp(-0.5 * z * z - 0.5 * std::log(2.0 * std::numbers::pi) - log_normal_cdf(z));
}

ProbitTerms probit_terms(std::span<const SwitchingRecord> records, double a, double b)
{
    ProbitTerms t;
    for (const auto& r : records) {
        const double z = a + b * r.v_pulse;
        double dz = 0.0;
        double d2z = 0.0;
        if (r.switched) {
            const double lam = mills(z);
            t.loglik += log_normal_cdf(z);
            dz = lam;
            d2z = -lam * (z + lam);
        } else {
            const double lam = mills(-z);
            t.loglik += log_normal_cdf(-z);
            dz = -lam;
            d2z = -lam * (lam - z);
        }
        t.grad[0] += dz;
        t.grad[1] += dz * r.v_pulse;
        t.hess[0] += d2z;
        t.hess[1] += d2z * r.v_pulse;
        t.hess[2] += d2z * r.v_pulse * r.v_pulse;
    }
    return t;
}

SwitchingFit grid_search_fit(std::span<const SwitchingRecord> records, double v_lo, double v_hi)
{
    constexpr int kSteps = 200;
    const double range = v_hi - v_lo;
    SwitchingFit best;
    best.log_likelihood = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kSteps; ++i) {
        const double mu = v_lo + range * i / kSteps;
        for (int j = 0; j <= kSteps; ++j) {
            // spread from range/1e4 to 2*range, log spaced
            const double s = range * 1e-4 * std::pow(2e4, static_cast<double>(j) / kSteps);
            const double ll = switching_log_likelihood(records, {mu, s});
            if (ll > best.log_likelihood) {
                best.log_likelihood = ll;
                best.curve = {mu, s};
            }
        }
    }
    return best;
}

}  // namespace

double switching_log_likelihood(std::span<const SwitchingRecord> records,
                                const SwitchingCurve& curve)
{
    validate(curve);
    double ll = 0.0;
    for (const auto& r : records) {
        const double z = (r.v_pulse - curve.v_median) / curve.v_spread;
        ll += r.switched ? log_normal_cdf(z) : log_normal_cdf(-z);
    }
    return ll;
}

SwitchingFit fit_switching_curve(std::span<const SwitchingRecord> records)
{
    if (records.size() < 10) {
        throw DegenerateDataError("fit_switching_curve: need at least 10 records, got " +
                                  std::to_string(records.size()));
    }
    const auto n_switched = static_cast<std::size_t>(std::count_if(
        records.begin(), records.end(), [](const SwitchingRecord& r) { return r.switched; }));
    if (n_switched == 0 || n_switched == records.size()) {
        throw DegenerateDataError("fit_switching_curve: all outcomes identical");
    }
    const auto [vmin_it, vmax_it] = std::minmax_element(
        records.begin(), records.end(),
        [](const SwitchingRecord& x, const SwitchingRecord& y) { return x.v_pulse < y.v_pulse; });
    const double v_lo = vmin_it->v_pulse;
    const double v_hi = vmax_it->v_pulse;
    if (!(v_hi > v_lo)) {
        throw DegenerateDataError("fit_switching_curve: amplitudes are constant");
    }

    double mean = 0.0;
    for (const auto& r : records) mean += r.v_pulse;
    mean /= static_cast<double>(records.size());
    double var = 0.0;
    for (const auto& r : records) var += (r.v_pulse - mean) * (r.v_pulse - mean);
    const double sd = std::sqrt(var / static_cast<double>(records.size()));

    constexpr std::size_t kMaxIter = 500;
    constexpr double kTol = 1e-8;

    double a = -mean / sd;
    double b = 1.0 / sd;
    ProbitTerms terms = probit_terms(records, a, b);
    SwitchingFit fit;
    fit.n_records = records.size();
    bool converged = false;
    std::size_t iter = 0;
    for (; iter < kMaxIter && !converged; ++iter) {
        // Newton step on the concave probit log-likelihood.
        const double haa = terms.hess[0], hab = terms.hess[1], hbb = terms.hess[2];
        const double det = haa * hbb - hab * hab;
        if (!(det > 0.0) || !std::isfinite(det)) break;
        double da = -(hbb * terms.grad[0] - hab * terms.grad[1]) / det;
        double db = -(-hab * terms.grad[0] + haa * terms.grad[1]) / det;
        if (std::max(std::abs(da), std::abs(db)) < kTol) {
            converged = true;
            break;
        }

        // Step halving keeps every accepted step an ascent step.
        double step = 1.0;
        ProbitTerms next;
        bool accepted = false;
        for (int h = 0; h < 60; ++h, step *= 0.5) {
            next = probit_terms(records, a + step * da, b + step * db);
            if (std::isfinite(next.loglik) && next.loglik >= terms.loglik) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        a += step * da;
        b += step * db;
        terms = next;
        converged = std::max(std::abs(step * da), std::abs(step * db)) < kTol;
    }
    fit.iterations = iter;

    if (converged && b > 0.0) {
        fit.converged = true;
        fit.curve = {-a / b, 1.0 / b};
        fit.log_likelihood = terms.loglik;
        const double haa = terms.hess[0], hab = terms.hess[1], hbb = terms.hess[2];
        const double det = haa * hbb - hab * hab;
        // Covariance of (a, b) is the inverse of the observed information -H.
        const double caa = -hbb / det;
        const double cab = hab / det;
        const double cbb = -haa / det;
        const double gma = -1.0 / b;
        const double gmb = a / (b * b);
        const double gsb = -1.0 / (b * b);
        fit.v_median_se = std::sqrt(std::max(0.0, gma * gma * caa + 2 * gma * gmb * cab +
                                                      gmb * gmb * cbb));
        fit.v_spread_se = std::sqrt(std::max(0.0, gsb * gsb * cbb));
        return fit;
    }

    SwitchingFit fallback = grid_search_fit(records, v_lo, v_hi);
    fallback.iterations = iter;
    fallback.converged = false;
    fallback.n_records = records.size();
    return fallback;
}

// ---------------------------------------------------------------------------

RetentionFit fit_retention(std::span<const RetentionRecord> records)
{
    std::map<double, std::vector<double>> groups;
    for (const auto& r : records) {
        if (!(r.retention_s > 0.0) || !std::isfinite(r.retention_s)) {
            throw InvalidArgument("fit_retention: retention_s must be > 0");
        }
        if (!(r.i_cc_uA > 0.0) || !std::isfinite(r.i_cc_uA)) {
            throw InvalidArgument("fit_retention: i_cc_uA must be > 0");
        }
        groups[r.i_cc_uA].push_back(r.retention_s);
    }
    if (groups.empty()) {
        throw DegenerateDataError("fit_retention: no records");
    }

    RetentionFit fit;
    for (auto& [icc, values] : groups) {
        if (values.size() < kMinRetentionSamples) {
            throw DegenerateDataError("fit_retention: group at " + format_double(icc) +
                                      " uA has " + std::to_string(values.size()) +
                                      " samples, need " +
                                      std::to_string(kMinRetentionSamples));
        }
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        const double median =
            n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);

        double mean_log = 0.0;
        for (double v : values) mean_log += std::log(v);
        mean_log /= static_cast<double>(n);
        double ss = 0.0;
        for (double v : values) ss += (std::log(v) - mean_log) * (std::log(v) - mean_log);
        const double sigma = std::sqrt(ss / static_cast<double>(n - 1));

        if (!fit.table.empty() && median < fit.table.back().retention.median_s) {
            fit.warnings.push_back("retention median decreases from " +
                                   format_double(fit.table.back().i_cc_uA) + " uA to " +
                                   format_double(icc) + " uA");
        }
        fit.table.push_back({icc, {median, sigma}});
        fit.group_sizes.push_back(n);
    }
    return fit;
}

// ---------------------------------------------------------------------------

std::vector<SwitchingRecord> synthesize_switching_records(const SwitchingCurve& curve,
                                                          std::size_t n, double v_lo,
                                                          double v_hi, Rng& rng)
{
    validate(curve);
    if (!(v_hi > v_lo)) {
        throw InvalidArgument("synthesize_switching_records: need v_hi > v_lo");
    }
    std::vector<SwitchingRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double v = rng.uniform(v_lo, v_hi);
        out.push_back({v, rng.bernoulli(switching_probability(curve, v))});
    }
    return out;
}

std::vector<RetentionRecord> synthesize_retention_records(double i_cc_uA,
                                                          const RetentionDistribution& dist,
                                                          std::size_t n, Rng& rng)
{
    validate(dist);
    std::vector<RetentionRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back({i_cc_uA, sample_retention(dist, rng)});
    }
    return out;
}

std::vector<SwitchingRecord> read_switching_csv(std::istream& in)
{
    std::vector<SwitchingRecord> out;
    for (const auto& row : csv::read_table(in, "v_pulse_V,switched")) {
        const auto line_no = static_cast<std::size_t>(std::stoul(row[2]));
        SwitchingRecord r;
        r.v_pulse = csv::parse_double(row[0], line_no);
        if (!std::isfinite(r.v_pulse)) {
            throw FormatError("line " + row[2] + ": v_pulse_V must be finite");
        }
        if (row[1] == "1") {
            r.switched = true;
        } else if (row[1] == "0") {
            r.switched = false;
        } else {
            throw FormatError("line " + row[2] + ": switched must be 0 or 1");
        }
        out.push_back(r);
    }
    return out;
}

void write_switching_csv(std::ostream& out, std::span<const SwitchingRecord> records)
{
    out << "v_pulse_V,switched\n";
    for (const auto& r : records) {
        out << format_double(r.v_pulse) << ',' << (r.switched ? 1 : 0) << '\n';
    }
}

std::vector<RetentionRecord> read_retention_csv(std::istream& in)
{
    std::vector<RetentionRecord> out;
    for (const auto& row : csv::read_table(in, "i_cc_uA,retention_s")) {
        const auto line_no = static_cast<std::size_t>(std::stoul(row[2]));
        RetentionRecord r;
        r.i_cc_uA = csv::parse_double(row[0], line_no);
        r.retention_s = csv::parse_double(row[1], line_no);
        if (!(r.retention_s > 0.0)) {
            throw FormatError("line " + row[2] + ": retention_s must be > 0");
        }
        out.push_back(r);
    }
    return out;
}

void write_retention_csv(std::ostream& out, std::span<const RetentionRecord> records)
{
    out << "i_cc_uA,retention_s\n";
    for (const auto& r : records) {
        out << format_double(r.i_cc_uA) << ',' << format_double(r.retention_s) << '\n';
    }
}

// ---------------------------------------------------------------------------

namespace {
constexpr const char* kDeckFormat = "memdecide-param-deck";
constexpr int kDeckVersion = 1;

template <typename T>
T required(const nlohmann::ordered_json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw FormatError(std::string("param deck: missing key '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("param deck: bad value for '") + key + "': " + e.what());
    }
}
}  // namespace

void write_deck(std::ostream& out, const ParamDeck& deck)
{
    nlohmann::ordered_json j;
    j["format"] = kDeckFormat;
    j["version"] = kDeckVersion;
    j["provenance"] = deck.provenance;
    j["switching"] = {{"v_median", deck.switching.v_median},
                      {"v_spread", deck.switching.v_spread}};
    auto table = nlohmann::ordered_json::array();
    for (const auto& e : deck.retention_table) {
        table.push_back({{"i_cc_uA", e.i_cc_uA},
                         {"median_s", e.retention.median_s},
                         {"sigma_log", e.retention.sigma_log}});
    }
    j["retention_table"] = std::move(table);
    out << j.dump(2) << '\n';
}

ParamDeck read_deck(std::istream& in)
{
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("param deck: ") + e.what());
    }
    if (required<std::string>(j, "format") != kDeckFormat) {
        throw FormatError("param deck: unrecognised format tag");
    }
    if (required<int>(j, "version") != kDeckVersion) {
        throw FormatError("param deck: unsupported version");
    }
    ParamDeck deck;
    deck.provenance = required<std::string>(j, "provenance");
    if (!j.contains("switching")) {
        throw FormatError("param deck: missing key 'switching'");
    }
    const auto& sw = j.at("switching");
    deck.switching = {required<double>(sw, "v_median"), required<double>(sw, "v_spread")};
    if (!j.contains("retention_table") || !j.at("retention_table").is_array()) {
        throw FormatError("param deck: retention_table must be an array");
    }
    for (const auto& e : j.at("retention_table")) {
        deck.retention_table.push_back(
            {required<double>(e, "i_cc_uA"),
             {required<double>(e, "median_s"), required<double>(e, "sigma_log")}});
    }
    try {
        validate(deck.switching);
        for (const auto& e : deck.retention_table) validate(e.retention);
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("param deck: ") + e.what());
    }
    if (!std::is_sorted(deck.retention_table.begin(), deck.retention_table.end(),
                        [](const RetentionEntry& x, const RetentionEntry& y) {
                            return x.i_cc_uA < y.i_cc_uA;
                        })) {
        throw FormatError("param deck: retention_table must be sorted by i_cc_uA");
    }
    return deck;
}

}  // namespace memdecide
