#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fxdiag/pipeline.hpp"
#include "simulate.hpp"

namespace fs = std::filesystem;
using namespace fxdiag;

namespace {

constexpr const char* kOutDirEnv = "FXDIAG_OUT_DIR";

Date parse_date_option(const std::string& text, const char* option) {
    Date d;
    if (!parse_date(text, d)) fail(ErrorKind::Configuration, std::string(option) + ": invalid date '" + text + "'");
    return d;
}

CalibrationSet resolve_calibration(const std::string& dir, std::uint64_t seed, std::string& source) {
    if (!dir.empty()) {
        auto set = CalibrationSet::load_directory(dir);
        if (set.empty()) fail(ErrorKind::Configuration, "no calibration tables in " + dir);
        source = "shipped:" + dir;
        return set;
    }
    // Installed layout first (<prefix>/bin/fxdiag next to <prefix>/share/fxdiag/calibration),
    // then the source tree the binary was built from.
    std::error_code ec;
    std::vector<fs::path> candidates;
    const auto exe = fs::read_symlink("/proc/self/exe", ec);
    if (!ec) candidates.push_back(exe.parent_path().parent_path() / FXDIAG_INSTALL_CALIBRATION_DIR);
    candidates.emplace_back(FXDIAG_DEFAULT_CALIBRATION_DIR);
    for (const auto& candidate : candidates) {
        if (!fs::is_directory(candidate, ec)) continue;
        auto set = CalibrationSet::load_directory(candidate);
        if (!set.empty()) {
            source = "shipped:default";
            return set;
        }
    }
    source = "generated";
    return generate_calibration_set(seed);
}

struct AnalyzeOptions {
    std::vector<std::string> inputs;
    std::string crisis_date = "2008-08-01";
    double level = 0.05;
    std::uint64_t seed = 20100401;
    std::string out;
    std::string format = "json";
    std::string calibration_dir;
    std::size_t min_obs = kDefaultMinObservations;
    std::optional<std::size_t> tail_k;
    unsigned threads = 0;
};

int run_analyze(const AnalyzeOptions& o) {
    if (o.format != "json") fail(ErrorKind::Configuration, "unsupported --format '" + o.format + "' (json)");
    AnalysisConfig cfg;
    cfg.level = o.level;
    cfg.min_obs = o.min_obs;
    cfg.tail_k = o.tail_k;
    validate(cfg);
    const Date crisis = parse_date_option(o.crisis_date, "--crisis-date");

    std::string out = o.out;
    if (out.empty()) {
        const char* env = std::getenv(kOutDirEnv);
        out = env && *env ? env : "fxdiag-out";
    }

    RunMetadata meta;
    meta.seed = o.seed;
    meta.level = o.level;
    meta.crisis_start = format_date(crisis);
    const CalibrationSet calibration = resolve_calibration(o.calibration_dir, o.seed, meta.calibration_source);

    std::vector<DiagnosticReport> reports;
    for (const auto& input : o.inputs) {
        const Series series = load_series(input);
        auto windows = split_half_years(series, o.min_obs);
        auto [pre, during] = split_crisis(series, crisis, o.min_obs);
        windows.push_back(std::move(pre));
        windows.push_back(std::move(during));
        auto part = analyze_windows(windows, cfg, calibration, fs::path(input).stem().string(), o.threads);
        for (auto& r : part) reports.push_back(std::move(r));
    }
    const auto written = emit(reports, meta, out, cfg.density_points);
    std::size_t rejected = 0, tested = 0;
    for (const auto& r : reports)
        if (r.m_test.result.ok()) {
            ++tested;
            rejected += r.m_test.result.value->reject ? 1 : 0;
        }
    std::cout << reports.size() << " windows analyzed; M-test rejects i.i.d. in " << rejected << " of "
              << tested << " at level " << o.level << "\n"
              << written.size() << " files written to " << out << "\n";
    return 0;
}

int run_calibrate(std::size_t n, std::size_t reps, std::uint64_t seed, const std::string& out,
                  unsigned threads) {
    const auto table = calibrate(n, reps, seed, threads);
    if (out.empty() || out == "-") std::cout << to_json(table);
    else save_calibration(table, out);
    return 0;
}

int run_fit_nig(const std::string& input, const std::string& window, const std::string& crisis_date) {
    const Series series = load_series(input);
    std::vector<Observation> points(series.points().begin(), series.points().end());
    std::string label = "all";
    if (!window.empty() && window != "all") {
        auto windows = split_half_years(series, 0);
        auto [pre, during] = split_crisis(series, parse_date_option(crisis_date, "--crisis-date"), 0);
        windows.push_back(std::move(pre));
        windows.push_back(std::move(during));
        auto it = std::find_if(windows.begin(), windows.end(), [&](const Window& w) { return w.label == window; });
        if (it == windows.end()) fail(ErrorKind::Configuration, "no window labelled '" + window + "'");
        points = it->points;
        label = window;
    }
    std::vector<double> values;
    for (const auto& p : points) values.push_back(p.value);
    const auto fit = fit_nig_sample(log_increments(values).values());
    nlohmann::ordered_json doc{{"instrument", fs::path(input).stem().string()},
                               {"window", label},
                               {"increments", values.size() - 1},
                               {"alpha", fit.params.alpha},
                               {"beta", fit.params.beta},
                               {"delta", fit.params.delta},
                               {"mu", fit.params.mu},
                               {"zeta", fit.shape.zeta},
                               {"tau", fit.shape.tau},
                               {"moments", {{"e", fit.moments.e}, {"v", fit.moments.v}, {"s", fit.moments.s}, {"k", fit.moments.k}}},
                               {"unstable", fit.unstable}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

struct SimulateOptions {
    std::string model = "samuelson";
    std::string start = "2000-01-03";
    std::string end = "2009-12-31";
    double x0 = 30.0;
    double drift = 0.0;
    double vol = 0.006;
    NigParams nig{2.0, 0.0, 1.0, 0.0};
    double nig_scale = 0.005;
    std::uint64_t seed = 1;
    std::string out;
};

int run_simulate(const SimulateOptions& o) {
    const auto dates = sim::working_days(parse_date_option(o.start, "--start"), parse_date_option(o.end, "--end"));
    if (dates.size() < 2) fail(ErrorKind::Configuration, "simulation range must contain at least 2 working days");
    if (!(o.x0 > 0.0)) fail(ErrorKind::Configuration, "--x0 must be positive");
    Engine eng = substream(o.seed, 0);
    std::vector<double> inc;
    if (o.model == "samuelson") {
        if (!(o.vol > 0.0)) fail(ErrorKind::Configuration, "--vol must be positive");
        inc = sim::gaussian(dates.size() - 1, o.drift, o.vol, eng);
    } else if (o.model == "nig") {
        try {
            validate(o.nig);
        } catch (const Error& e) {
            fail(ErrorKind::Configuration, e.what());
        }
        inc = sim::nig(dates.size() - 1, o.nig, eng);
        for (auto& x : inc) x *= o.nig_scale;
    } else {
        fail(ErrorKind::Configuration, "unknown --model '" + o.model + "' (samuelson|nig)");
    }
    const Series series = sim::price_path(dates, o.x0, inc);

    std::ostringstream body;
    body << "date,value\n";
    char buf[32];
    for (const auto& p : series.points()) {
        std::snprintf(buf, sizeof buf, "%.17g", p.value);
        body << format_date(p.date) << ',' << buf << '\n';
    }
    if (o.out.empty() || o.out == "-") {
        std::cout << body.str();
    } else {
        std::ofstream f(o.out, std::ios::binary);
        if (!f) fail(ErrorKind::Io, "cannot write " + o.out);
        f << body.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fxdiag: diagnostics for i.i.d. Gaussian log-increments of positive time series"};
    app.require_subcommand(1);

    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Run the diagnostic battery on half-year and crisis windows");
    analyze->add_option("csv", ao.inputs, "Input CSV files (date,value)")->required();
    analyze->add_option("--crisis-date", ao.crisis_date, "First day of the crisis window (YYYY-MM-DD)");
    analyze->add_option("--level", ao.level, "M-test significance level (0.01, 0.02, 0.05, 0.1, 0.2)");
    analyze->add_option("--seed", ao.seed, "Seed for in-process calibration when no tables are shipped");
    analyze->add_option("--out", ao.out, std::string("Output directory (default $") + kOutDirEnv + " or fxdiag-out)");
    analyze->add_option("--format", ao.format, "Report format (json)");
    analyze->add_option("--calibration-dir", ao.calibration_dir, "Directory of calibration JSON tables");
    analyze->add_option("--min-obs", ao.min_obs, "Minimum observations per window");
    analyze->add_option("--tail-k", ao.tail_k, "Fixed order-statistic depth for Hill and Pickands");
    analyze->add_option("--threads", ao.threads, "Worker threads (0 = hardware)");

    std::size_t cal_n = 10000, cal_reps = 10000;
    std::uint64_t cal_seed = 20100401;
    std::string cal_out;
    unsigned cal_threads = 0;
    auto* cal = app.add_subcommand("calibrate", "Monte Carlo calibration of the M-test statistic");
    cal->add_option("--n", cal_n, "Series length per replication")->required();
    cal->add_option("--reps", cal_reps, "Replications")->required();
    cal->add_option("--seed", cal_seed, "RNG seed")->required();
    cal->add_option("--out", cal_out, "Output JSON file ('-' for stdout)")->required();
    cal->add_option("--threads", cal_threads, "Worker threads (0 = hardware)");

    std::string fit_input, fit_window, fit_crisis = "2008-08-01";
    auto* fit = app.add_subcommand("fit-nig", "Method-of-moments NIG fit of a series' log-increments");
    fit->add_option("csv", fit_input, "Input CSV file")->required();
    fit->add_option("--window", fit_window, "Window label (e.g. 2005H1, pre-crisis, crisis, all)");
    fit->add_option("--crisis-date", fit_crisis, "Crisis start used for pre-crisis/crisis labels");

    SimulateOptions so;
    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic working-day price series");
    simulate->add_option("--model", so.model, "samuelson | nig")->required();
    simulate->add_option("--start", so.start, "First date (YYYY-MM-DD)");
    simulate->add_option("--end", so.end, "Last date (YYYY-MM-DD)");
    simulate->add_option("--x0", so.x0, "Initial price");
    simulate->add_option("--drift", so.drift, "Samuelson: mean log-increment");
    simulate->add_option("--vol", so.vol, "Samuelson: log-increment standard deviation");
    simulate->add_option("--alpha", so.nig.alpha, "NIG alpha");
    simulate->add_option("--beta", so.nig.beta, "NIG beta");
    simulate->add_option("--delta", so.nig.delta, "NIG delta");
    simulate->add_option("--mu", so.nig.mu, "NIG mu");
    simulate->add_option("--scale", so.nig_scale, "NIG: multiplier applied to each draw");
    simulate->add_option("--seed", so.seed, "RNG seed");
    simulate->add_option("--out", so.out, "Output CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return run_analyze(ao);
        if (*cal) return run_calibrate(cal_n, cal_reps, cal_seed, cal_out, cal_threads);
        if (*fit) return run_fit_nig(fit_input, fit_window, fit_crisis);
        if (*simulate) return run_simulate(so);
    } catch (const Error& e) {
        std::cerr << "fxdiag: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "fxdiag: internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
