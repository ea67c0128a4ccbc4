// Writes synthetic calibration CSVs drawn from a known device model, so the
// calibrate subcommand can be exercised end to end.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memdecide/calibration.hpp"
#include "memdecide/rng.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Generate synthetic switching/retention CSVs", "memdecide_fixtures"};

    std::string out_dir = ".";
    std::uint64_t seed = 7;
    std::size_t n_switching = 10000;
    double v_median = 0.6;
    double v_spread = 0.05;
    double v_lo = 0.4;
    double v_hi = 0.8;
    std::vector<std::string> groups{"10:0.01:0.5", "100:0.1:0.5", "300:1:0.5"};
    std::size_t n_retention = 10000;

    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Generator seed");
    app.add_option("--n_switching", n_switching, "Switching records");
    app.add_option("--v_median", v_median, "Generator curve median [V]");
    app.add_option("--v_spread", v_spread, "Generator curve spread [V]");
    app.add_option("--v_lo", v_lo, "Lowest amplitude [V]");
    app.add_option("--v_hi", v_hi, "Highest amplitude [V]");
    app.add_option("--groups", groups, "Retention groups icc_uA:median_s:sigma_log");
    app.add_option("--n_retention", n_retention, "Retention samples per group");
    CLI11_PARSE(app, argc, argv);

    try {
        memdecide::Rng rng(memdecide::derive_seed(seed, {}));
        const auto sw = memdecide::synthesize_switching_records({v_median, v_spread}, n_switching,
                                                                v_lo, v_hi, rng);
        std::vector<memdecide::RetentionRecord> rt;
        for (const auto& g : groups) {
            const auto a = g.find(':');
            const auto b = g.find(':', a + 1);
            if (a == std::string::npos || b == std::string::npos) {
                std::cerr << "bad group '" << g << "', expected icc:median:sigma\n";
                return 2;
            }
            const double icc = std::stod(g.substr(0, a));
            const double median = std::stod(g.substr(a + 1, b - a - 1));
            const double sigma = std::stod(g.substr(b + 1));
            const auto recs =
                memdecide::synthesize_retention_records(icc, {median, sigma}, n_retention, rng);
            rt.insert(rt.end(), recs.begin(), recs.end());
        }

        std::filesystem::create_directories(out_dir);
        std::ofstream f_sw(std::filesystem::path(out_dir) / "switching.csv", std::ios::binary);
        memdecide::write_switching_csv(f_sw, sw);
        std::ofstream f_rt(std::filesystem::path(out_dir) / "retention.csv", std::ios::binary);
        memdecide::write_retention_csv(f_rt, rt);
        if (!f_sw || !f_rt) {
            std::cerr << "error: failed writing fixtures to " << out_dir << '\n';
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
