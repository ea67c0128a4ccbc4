#include "app.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "memdecide/calibration.hpp"
#include "memdecide/error.hpp"
#include "memdecide/experiment.hpp"
#include "memdecide/network.hpp"
#include "memdecide/stats.hpp"
#include "memdecide/stream.hpp"
#include "svg.hpp"

namespace fs = std::filesystem;

namespace memdecide::cli {

namespace {

/// Raised while turning options into simulation inputs; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct HelpShown {};

void parse_args(CLI::App& app, int argc, const char* const* argv, std::ostream& out)
{
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        throw HelpShown{};
    }
}

constexpr const char* kUsage =
    "usage: memdecide <trace|trial|sweep|calibrate> --config <file> [--seed N] [--out <dir>]\n"
    "                 [--svg] [--threads N] [--<key> <value> ...]\n"
    "Run `memdecide <subcommand> --help` for the keys of each subcommand.\n";

// Options that only affect where or how output is produced. They are left out
// of the provenance header so they cannot change CSV bytes.
bool presentation_only(const std::string& key)
{
    return key == "config" || key == "out" || key == "svg" || key == "threads";
}

struct CommonOptions {
    std::string out_dir = ".";
    bool svg = false;
    int threads = 0;
    std::uint64_t seed = 1;
};

void add_common(CLI::App& app, CommonOptions& c)
{
    app.set_config("--config", "", "Configuration file (key = value, # comments)");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.add_option("--seed", c.seed, "Master seed");
    app.add_option("--out", c.out_dir, "Output directory");
    app.add_flag("--svg", c.svg, "Also write SVG plots");
    app.add_option("--threads", c.threads, "Worker thread cap (0 = OpenMP default)")
        ->check(CLI::NonNegativeNumber);
}

struct ModelOptions {
    double v_median = 0.6;
    double v_spread = 0.05;
    std::vector<std::string> retention_table{"10:0.01", "100:0.1", "300:1"};
    double sigma_log = 0.5;
    double i_off = 0.0;
    std::string deck;

    CLI::Option* v_median_opt = nullptr;
    CLI::Option* v_spread_opt = nullptr;
    CLI::Option* table_opt = nullptr;
};

void add_model(CLI::App& app, ModelOptions& m)
{
    m.v_median_opt = app.add_option("--v_median", m.v_median,
                                    "Switching curve: amplitude with P_ON = 0.5 [V]");
    m.v_spread_opt = app.add_option("--v_spread", m.v_spread,
                                    "Switching curve: set-voltage spread [V]");
    m.table_opt = app.add_option("--retention_table", m.retention_table,
                                 "Retention vs compliance, entries icc_uA:median_s[:sigma_log]");
    app.add_option("--sigma_log", m.sigma_log,
                   "Log-spread for retention_table entries without an explicit one");
    app.add_option("--i_off", m.i_off, "OFF-state leakage per device [uA]");
    app.add_option("--deck", m.deck, "Parameter deck from `calibrate` (replaces the curve "
                                     "and retention table)");
}

struct Model {
    SwitchingCurve switching;
    RetentionTable table;
    double i_off = 0.0;
};

double parse_number(const std::string& text, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("cannot parse " + what + " '" + text + "'");
    }
}

std::vector<std::string> split_on(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, sep)) parts.push_back(part);
    return parts;
}

Model resolve_model(const ModelOptions& m)
{
    Model model;
    model.i_off = m.i_off;
    if (!m.deck.empty()) {
        if (m.v_median_opt->count() > 0 || m.v_spread_opt->count() > 0 ||
            m.table_opt->count() > 0) {
            throw ConfigError("deck cannot be combined with v_median, v_spread or "
                              "retention_table");
        }
        std::ifstream in(m.deck);
        if (!in) throw ConfigError("cannot open deck '" + m.deck + "'");
        try {
            const ParamDeck deck = read_deck(in);
            model.switching = deck.switching;
            model.table = deck.retention_table;
        } catch (const FormatError& e) {
            throw ConfigError(e.what());
        }
    } else {
        model.switching = {m.v_median, m.v_spread};
        for (const auto& entry : m.retention_table) {
            const auto parts = split_on(entry, ':');
            if (parts.size() != 2 && parts.size() != 3) {
                throw ConfigError("retention_table entry '" + entry +
                                  "' must be icc_uA:median_s[:sigma_log]");
            }
            RetentionEntry e;
            e.i_cc_uA = parse_number(parts[0], "retention_table i_cc");
            e.retention.median_s = parse_number(parts[1], "retention_table median");
            e.retention.sigma_log =
                parts.size() == 3 ? parse_number(parts[2], "retention_table sigma") : m.sigma_log;
            if (!(e.i_cc_uA > 0.0)) throw ConfigError("retention_table i_cc must be > 0");
            if (!model.table.empty() && !(e.i_cc_uA > model.table.back().i_cc_uA)) {
                throw ConfigError("retention_table must be strictly increasing in i_cc");
            }
            model.table.push_back(e);
        }
        if (model.table.empty()) throw ConfigError("retention_table is empty");
    }
    try {
        validate(model.switching);
        for (const auto& e : model.table) validate(e.retention);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (!(model.i_off >= 0.0)) throw ConfigError("i_off must be >= 0");
    return model;
}

DeviceParams device_at(const Model& model, double i_cc, double median_override)
{
    if (!(i_cc > 0.0)) throw ConfigError("i_cc must be > 0");
    auto retention = interpolate_retention(model.table, i_cc);
    if (median_override > 0.0) retention.median_s = median_override;
    auto p = DeviceParams::at_compliance(i_cc, model.switching, retention);
    p.i_off = model.i_off;
    if (!(p.i_on > p.i_off)) throw ConfigError("i_off must be below the ON current");
    return p;
}

std::vector<std::string> provenance(const CLI::App& app, const std::string& command)
{
    std::vector<std::string> lines{"memdecide " + command};
    std::istringstream cfg(app.config_to_str(true, false));
    std::string line;
    while (std::getline(cfg, line)) {
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string key = line.substr(0, eq);
        if (presentation_only(key)) continue;
        lines.push_back(line);
    }
    return lines;
}

fs::path prepare_out_dir(const std::string& dir)
{
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir + "'");
    return p;
}

std::ofstream open_out(const fs::path& path)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    return f;
}

void check_probability(double p, const char* what)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(what) + " must lie in [0, 1]");
    }
}

// ---------------------------------------------------------------------------

int cmd_trace(int argc, const char* const* argv, std::ostream& out)
{
    CLI::App app{"Averaged synapse current under a pulse train", "memdecide trace"};
    app.option_defaults()->always_capture_default();
    CommonOptions common;
    ModelOptions model_opts;
    add_common(app, common);
    add_model(app, model_opts);

    std::size_t n_devices = 50;
    std::vector<double> p_on{0.1};
    std::vector<double> i_cc{300.0};
    std::vector<double> medians;
    std::size_t n_pulses = 50;
    double rate_hz = 10.0;
    double start_s = 0.0;
    double tail_s = 0.0;
    std::string stream_file;
    double window_s = 0.0;
    double sample_rate_hz = 100.0;
    std::size_t repeats = 100;

    app.add_option("--n_devices", n_devices, "Devices in the synapse")->check(CLI::PositiveNumber);
    app.add_option("--p_on", p_on, "Switching probabilities, one curve each");
    app.add_option("--i_cc", i_cc, "Compliance currents [uA], one curve each");
    app.add_option("--retention_median_s", medians,
                   "Retention medians overriding the table, one curve each (uses first i_cc)");
    app.add_option("--n_pulses", n_pulses, "Periodic train length");
    app.add_option("--rate_hz", rate_hz, "Periodic train rate [Hz]");
    app.add_option("--start_s", start_s, "Time of the first pulse [s]");
    app.add_option("--tail_s", tail_s, "Observation time after the train [s]");
    app.add_option("--stream_file", stream_file, "Replay pulse times from a t_s CSV");
    app.add_option("--window_s", window_s, "Trial window for a replayed stream [s]");
    app.add_option("--sample_rate_hz", sample_rate_hz, "Trace sampling rate [Hz]");
    app.add_option("--repeats", repeats, "Independent repeats averaged per curve")
        ->check(CLI::PositiveNumber);

    parse_args(app, argc, argv, out);

    Model model;
    PulseStream stream;
    std::vector<TraceCurve> curves;
    std::vector<TraceExperiment> experiments;
    try {
        model = resolve_model(model_opts);
        if (!stream_file.empty()) {
            if (!(window_s > 0.0)) throw ConfigError("stream_file needs window_s > 0");
            std::ifstream in(stream_file);
            if (!in) throw ConfigError("cannot open stream_file '" + stream_file + "'");
            stream = read_stream_csv(in, window_s);
        } else {
            stream = generate_periodic(n_pulses, rate_hz, start_s);
        }
        if (!(tail_s >= 0.0)) throw ConfigError("tail_s must be >= 0");
        stream.duration_s += tail_s;
        if (!(sample_rate_hz > 0.0)) throw ConfigError("sample_rate_hz must be > 0");
        if (p_on.empty() || i_cc.empty()) throw ConfigError("p_on and i_cc need values");

        std::vector<std::pair<double, double>> retention_cases;  // (i_cc, median override)
        if (!medians.empty()) {
            for (double m : medians) {
                if (!(m > 0.0)) throw ConfigError("retention_median_s must be > 0");
                retention_cases.emplace_back(i_cc.front(), m);
            }
        } else {
            for (double c : i_cc) retention_cases.emplace_back(c, 0.0);
        }
        std::uint64_t k = 0;
        for (double p : p_on) {
            check_probability(p, "p_on");
            for (const auto& [c, m] : retention_cases) {
                TraceExperiment e;
                e.n_devices = n_devices;
                e.stream = stream;
                e.p_on = p;
                e.params = device_at(model, c, m);
                e.sample_rate_hz = sample_rate_hz;
                e.repeats = repeats;
                e.master_seed = derive_seed(common.seed, {k++});
                experiments.push_back(e);
                curves.push_back({p, c, e.params.retention.median_s, repeats, {}});
            }
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    } catch (const FormatError& e) {
        throw ConfigError(e.what());
    }

    set_max_threads(common.threads);
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        curves[i].samples = run_trace_experiment(experiments[i]);
    }

    const auto dir = prepare_out_dir(common.out_dir);
    {
        auto f = open_out(dir / "trace.csv");
        write_mean_trace_csv(f, curves, provenance(app, "trace"));
    }
    if (common.svg) {
        std::vector<Series> series;
        for (const auto& c : curves) {
            Series s;
            s.label = "P_ON=" + format_double(c.p_on) + " tau=" + format_double(c.retention_median_s) + "s";
            for (const auto& pt : c.samples) s.points.emplace_back(pt.t_s, pt.mean_count_on);
            series.push_back(std::move(s));
        }
        auto f = open_out(dir / "trace.svg");
        write_line_chart(f, {"Synapse ON count (" + std::to_string(n_devices) + " devices)",
                             "time [s]", "mean devices ON", false, 0.0,
                             static_cast<double>(n_devices)},
                         series);
    }
    out << "wrote " << (dir / "trace.csv").string() << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_trial(int argc, const char* const* argv, std::ostream& out)
{
    CLI::App app{"One 2AFC trial", "memdecide trial"};
    app.option_defaults()->always_capture_default();
    CommonOptions common;
    ModelOptions model_opts;
    add_common(app, common);
    add_model(app, model_opts);

    std::size_t n_devices = 20;
    std::size_t n_a = 40;
    std::size_t n_b = 20;
    double duration_s = 2.0;
    double i_cc = 270.0;
    double p_on = 0.01;
    double v_pulse = std::numeric_limits<double>::quiet_NaN();
    double median = 0.0;
    std::size_t trial_index = 0;

    app.add_option("--n_devices", n_devices, "Devices per synapse")->check(CLI::PositiveNumber);
    app.add_option("--n_a", n_a, "Pulses in stream A");
    app.add_option("--n_b", n_b, "Pulses in stream B");
    app.add_option("--duration_s", duration_s, "Trial duration [s]");
    app.add_option("--i_cc", i_cc, "Compliance current [uA]");
    auto* p_opt = app.add_option("--p_on", p_on, "Switching probability per pulse");
    auto* v_opt = app.add_option("--v_pulse", v_pulse, "Pulse amplitude [V] (instead of p_on)");
    p_opt->excludes(v_opt);
    app.add_option("--retention_median_s", median, "Retention median override [s] (0 = table)");
    app.add_option("--trial_index", trial_index, "Trial index within the seeded batch");
    parse_args(app, argc, argv, out);

    TwoAfcConfig cfg;
    try {
        const Model model = resolve_model(model_opts);
        if (median < 0.0) throw ConfigError("retention_median_s must be >= 0");
        cfg.n_devices = n_devices;
        cfg.params = device_at(model, i_cc, median);
        if (v_opt->count() > 0) {
            cfg.v_pulse = v_pulse;
        } else {
            check_probability(p_on, "p_on");
            cfg.v_pulse = amplitude_for_probability(model.switching, p_on);
        }
        cfg.spec_a = {n_a, duration_s};
        cfg.spec_b = {n_b, duration_s};
        validate(cfg);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }

    Rng rng(derive_seed(common.seed, {static_cast<std::uint64_t>(trial_index)}));
    const TrialResult r = run_trial(cfg, rng);

    std::ostringstream row;
    write_trial_header(row);
    write_trial_row(row, trial_index, r);
    out << row.str();

    if (app.get_option("--out")->count() > 0) {
        const auto dir = prepare_out_dir(common.out_dir);
        auto f = open_out(dir / "trial.csv");
        for (const auto& line : provenance(app, "trial")) f << "# " << line << '\n';
        f << row.str();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<std::pair<std::size_t, std::size_t>> parse_ratios(const std::vector<std::string>& in)
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& r : in) {
        const auto parts = split_on(r, '/');
        if (parts.size() != 2) throw ConfigError("ratio '" + r + "' must look like 40/20");
        const double a = parse_number(parts[0], "ratio");
        const double b = parse_number(parts[1], "ratio");
        if (a < 0 || b < 0 || a != std::floor(a) || b != std::floor(b)) {
            throw ConfigError("ratio '" + r + "' needs non-negative integer counts");
        }
        out.emplace_back(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
    return out;
}

void write_sweep_svg(std::ostream& f, const SweepGrid& grid,
                     const std::vector<AccuracyPoint>& points)
{
    // x axis: first axis with more than one value; one series per remaining
    // combination.
    enum class Axis { Duration, Devices, Icc, Pon };
    Axis axis = Axis::Duration;
    if (grid.durations_s.size() > 1) axis = Axis::Duration;
    else if (grid.device_counts.size() > 1) axis = Axis::Devices;
    else if (grid.i_cc_values_uA.size() > 1) axis = Axis::Icc;
    else if (grid.p_on_values.size() > 1) axis = Axis::Pon;

    std::map<std::string, Series> by_label;
    std::vector<std::string> order;
    for (const auto& p : points) {
        double x = p.duration_s;
        std::string label = std::to_string(p.n_a) + "/" + std::to_string(p.n_b);
        if (axis != Axis::Devices) label += " N=" + std::to_string(p.n_devices);
        if (axis != Axis::Icc) label += " Icc=" + format_double(p.i_cc_uA);
        if (axis != Axis::Pon) label += " P=" + format_double(p.p_on);
        if (axis != Axis::Duration) label += " T=" + format_double(p.duration_s);
        switch (axis) {
        case Axis::Duration: x = p.duration_s; break;
        case Axis::Devices: x = static_cast<double>(p.n_devices); break;
        case Axis::Icc: x = p.i_cc_uA; break;
        case Axis::Pon: x = p.p_on; break;
        }
        if (!by_label.contains(label)) {
            order.push_back(label);
            by_label[label].label = label;
        }
        by_label[label].points.emplace_back(x, p.accuracy);
    }
    std::vector<Series> series;
    for (const auto& l : order) series.push_back(by_label[l]);
    const char* x_label = axis == Axis::Duration  ? "duration [s]"
                          : axis == Axis::Devices ? "devices per synapse"
                          : axis == Axis::Icc     ? "compliance current [uA]"
                                                  : "P_ON";
    write_line_chart(f, {"2AFC accuracy", x_label, "accuracy", axis != Axis::Pon, 0.4, 1.0},
                     series);
}

int cmd_sweep(int argc, const char* const* argv, std::ostream& out)
{
    CLI::App app{"Accuracy sweep over a parameter grid", "memdecide sweep"};
    app.option_defaults()->always_capture_default();
    CommonOptions common;
    ModelOptions model_opts;
    add_common(app, common);
    add_model(app, model_opts);

    std::vector<double> durations{2.0};
    std::vector<std::string> ratios{"40/20"};
    std::vector<std::size_t> devices{20};
    std::vector<double> i_cc{270.0};
    std::vector<double> p_on{0.01};
    std::size_t trials = 1000;

    app.add_option("--durations", durations, "Trial durations [s]");
    app.add_option("--ratios", ratios, "Pulse-count pairs n_a/n_b");
    app.add_option("--n_devices", devices, "Devices per synapse");
    app.add_option("--i_cc", i_cc, "Compliance currents [uA]");
    app.add_option("--p_on", p_on, "Switching probabilities");
    app.add_option("--trials", trials, "Trials per grid point")->check(CLI::PositiveNumber);
    parse_args(app, argc, argv, out);

    SweepGrid grid;
    try {
        const Model model = resolve_model(model_opts);
        if (model.i_off != 0.0) {
            throw ConfigError("sweep uses i_off = 0; set it only for trace/trial");
        }
        grid.durations_s = durations;
        grid.ratios = parse_ratios(ratios);
        grid.device_counts = devices;
        grid.i_cc_values_uA = i_cc;
        grid.p_on_values = p_on;
        grid.trials_per_point = trials;
        grid.master_seed = common.seed;
        grid.switching = model.switching;
        grid.retention_table = model.table;
        validate(grid);
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }

    set_max_threads(common.threads);
    const auto points = sweep(grid);

    const auto dir = prepare_out_dir(common.out_dir);
    {
        auto f = open_out(dir / "report.csv");
        write_report_csv(f, points, provenance(app, "sweep"));
    }
    if (common.svg) {
        auto f = open_out(dir / "report.svg");
        write_sweep_svg(f, grid, points);
    }
    out << "wrote " << (dir / "report.csv").string() << " (" << points.size() << " points)\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_calibrate(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Fit device parameters from measured CSVs", "memdecide calibrate"};
    app.option_defaults()->always_capture_default();
    CommonOptions common;
    add_common(app, common);

    std::string switching_csv;
    std::string retention_csv;
    std::string provenance_text;
    app.add_option("--switching_csv", switching_csv, "v_pulse_V,switched records")->required();
    app.add_option("--retention_csv", retention_csv, "i_cc_uA,retention_s records")->required();
    app.add_option("--provenance", provenance_text, "Free-text source description for the deck");
    parse_args(app, argc, argv, out);

    std::ifstream sw_in(switching_csv);
    if (!sw_in) throw ConfigError("cannot open switching_csv '" + switching_csv + "'");
    std::ifstream rt_in(retention_csv);
    if (!rt_in) throw ConfigError("cannot open retention_csv '" + retention_csv + "'");

    const auto sw_records = read_switching_csv(sw_in);
    const auto rt_records = read_retention_csv(rt_in);
    const SwitchingFit sw = fit_switching_curve(sw_records);
    const RetentionFit rt = fit_retention(rt_records);

    ParamDeck deck;
    deck.switching = sw.curve;
    deck.retention_table = rt.table;
    deck.provenance = provenance_text.empty()
                          ? "fitted from " + fs::path(switching_csv).filename().string() +
                                " and " + fs::path(retention_csv).filename().string()
                          : provenance_text;

    const auto dir = prepare_out_dir(common.out_dir);
    {
        auto f = open_out(dir / "params.deck");
        write_deck(f, deck);
    }
    {
        auto f = open_out(dir / "diagnostics.csv");
        for (const auto& line : provenance(app, "calibrate")) f << "# " << line << '\n';
        f << "section,key,value\n";
        f << "switching,n_records," << sw.n_records << '\n';
        f << "switching,v_median_V," << format_double(sw.curve.v_median) << '\n';
        f << "switching,v_median_se_V," << format_double(sw.v_median_se) << '\n';
        f << "switching,v_spread_V," << format_double(sw.curve.v_spread) << '\n';
        f << "switching,v_spread_se_V," << format_double(sw.v_spread_se) << '\n';
        f << "switching,log_likelihood," << format_double(sw.log_likelihood) << '\n';
        f << "switching,iterations," << sw.iterations << '\n';
        f << "switching,converged," << (sw.converged ? 1 : 0) << '\n';
        for (std::size_t i = 0; i < rt.table.size(); ++i) {
            const std::string section = "retention@" + format_double(rt.table[i].i_cc_uA);
            f << section << ",n_samples," << rt.group_sizes[i] << '\n';
            f << section << ",median_s," << format_double(rt.table[i].retention.median_s) << '\n';
            f << section << ",sigma_log," << format_double(rt.table[i].retention.sigma_log)
              << '\n';
        }
        f << "retention,warnings," << rt.warnings.size() << '\n';
    }
    for (const auto& w : rt.warnings) err << "warning: " << w << '\n';
    if (!sw.converged) {
        err << "warning: switching fit did not converge; grid-search estimate reported\n";
    }
    out << "wrote " << (dir / "params.deck").string() << " and "
        << (dir / "diagnostics.csv").string() << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    if (argc < 2) {
        err << kUsage;
        return kExitConfig;
    }
    const std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        out << kUsage;
        return kExitOk;
    }
    // The subcommand name stands in for argv[0] of the per-command parser.
    const int sub_argc = argc - 1;
    const char* const* sub_argv = argv + 1;
    try {
        if (command == "trace") return cmd_trace(sub_argc, sub_argv, out);
        if (command == "trial") return cmd_trial(sub_argc, sub_argv, out);
        if (command == "sweep") return cmd_sweep(sub_argc, sub_argv, out);
        if (command == "calibrate") return cmd_calibrate(sub_argc, sub_argv, out, err);
        err << "unknown subcommand '" << command << "'\n" << kUsage;
        return kExitConfig;
    } catch (const HelpShown&) {
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

}  // namespace memdecide::cli
