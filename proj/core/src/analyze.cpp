#include <algorithm>
#include <cmath>
#include <thread>

#include "fxdiag/pipeline.hpp"

namespace fxdiag {

namespace {

template <class F>
auto capture(F&& f) -> Outcome<decltype(f())> {
    Outcome<decltype(f())> out;
    try {
        out.value = f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Configuration) throw;
        out.error = ComponentError{e.kind(), e.what()};
    }
    return out;
}

template <class T>
Outcome<T> skipped_outcome(const std::string& why) {
    return {std::nullopt, ComponentError{ErrorKind::InsufficientData, why}};
}

void note(std::vector<std::string>& warnings, const std::string& component, const ComponentError& e) {
    warnings.push_back(component + ": " + std::string(to_string(e.kind)) + ": " + e.message);
}

TailSide analyze_tail(std::span<const double> signed_xs, const AnalysisConfig& cfg) {
    TailSide side;
    std::vector<double> exceedances;
    for (double x : signed_xs)
        if (x > 0.0) exceedances.push_back(x);

    const std::size_t m = exceedances.size();
    side.hill = capture([&] {
        if (m < 2) {
            const auto [lo, hi] = std::minmax_element(signed_xs.begin(), signed_xs.end());
            if (!signed_xs.empty() && *lo == *hi) fail(ErrorKind::Degenerate, "hill: constant sample");
            fail(ErrorKind::InsufficientData, "hill: fewer than 2 positive values in this tail");
        }
        const std::size_t k = cfg.tail_k.value_or(std::min(default_tail_k(m, TailMethod::Hill), m - 1));
        return hill(exceedances, k);
    });
    side.pickands = capture([&] {
        return pickands(signed_xs, cfg.tail_k.value_or(default_tail_k(signed_xs.size(), TailMethod::Pickands)));
    });
    if (m >= 2) {
        const auto grid = log_spaced_grid(m - 1, cfg.k_grid_size);
        side.hill_scan = tail_scan(exceedances, grid, TailMethod::Hill);
    }
    if (signed_xs.size() >= 4) {
        const auto grid = log_spaced_grid(signed_xs.size() / 4, cfg.k_grid_size);
        side.pickands_scan = tail_scan(signed_xs, grid, TailMethod::Pickands);
    }
    return side;
}

}  // namespace

void validate(const AnalysisConfig& cfg) {
    if (std::none_of(kSupportedTestLevels.begin(), kSupportedTestLevels.end(),
                     [&](double l) { return std::abs(l - cfg.level) < 1e-12; }))
        fail(ErrorKind::Configuration, "unsupported significance level " + std::to_string(cfg.level) +
                                           " (supported: 0.01, 0.02, 0.05, 0.1, 0.2)");
    if (cfg.tail_k && *cfg.tail_k == 0) fail(ErrorKind::Configuration, "tail k must be positive");
    if (cfg.k_grid_size == 0) fail(ErrorKind::Configuration, "k grid size must be positive");
    if (!(cfg.zeta_threshold > 0.0)) fail(ErrorKind::Configuration, "zeta threshold must be positive");
    if (cfg.density_points < 2) fail(ErrorKind::Configuration, "density grid needs >= 2 points");
}

DiagnosticReport analyze_window(const Window& w, const AnalysisConfig& cfg,
                                const CalibrationSet& calibration, const std::string& instrument) {
    validate(cfg);
    DiagnosticReport r;
    r.instrument = instrument;
    r.label = w.label;
    r.start = w.start;
    r.end = w.end;
    r.observations = w.points.size();
    r.increments = w.points.empty() ? 0 : w.points.size() - 1;

    if (w.too_short) {
        r.skipped = true;
        const std::string why = "window has " + std::to_string(w.points.size()) +
                                " observations, below the minimum of " + std::to_string(cfg.min_obs);
        r.warnings.push_back("too-short: " + why);
        r.moments = skipped_outcome<MomentSummary>(why);
        r.right_tail.hill = r.right_tail.pickands = skipped_outcome<TailEstimate>(why);
        r.left_tail.hill = r.left_tail.pickands = skipped_outcome<TailEstimate>(why);
        r.m_test.result = skipped_outcome<MTestResult>(why);
        r.rs_points = skipped_outcome<std::vector<RsPoint>>(why);
        r.hurst = skipped_outcome<HurstFit>(why);
        r.nig = skipped_outcome<NigSampleFit>(why);
        return r;
    }

    std::vector<double> values;
    values.reserve(w.points.size());
    for (const auto& p : w.points) values.push_back(p.value);
    const Increments inc = log_increments(values);
    const auto xs = inc.values();
    std::vector<double> negated(xs.size());
    std::transform(xs.begin(), xs.end(), negated.begin(), [](double x) { return -x; });

    r.moments = capture([&] { return moment_summary(xs); });
    r.right_tail = analyze_tail(xs, cfg);
    r.left_tail = analyze_tail(negated, cfg);

    const CalibrationTable& table = calibration.nearest(w.points.size());
    r.m_test.calibration_sample_size = table.sample_size;
    r.m_test.calibration_replications = table.replications;
    r.m_test.calibration_seed = table.seed;
    r.m_test.result = capture([&] { return m_test(xs, table, cfg.level); });

    r.rs_points = capture([&] { return rs_curve(xs); });
    if (r.rs_points.ok()) {
        std::size_t skipped_blocks = 0;
        for (const auto& p : *r.rs_points.value) skipped_blocks += p.blocks_skipped;
        if (skipped_blocks > 0)
            r.warnings.push_back("rescaled-range: " + std::to_string(skipped_blocks) +
                                 " degenerate blocks skipped");
        r.hurst = capture([&] { return hurst_estimate(*r.rs_points.value); });
    } else {
        r.hurst.error = r.rs_points.error;
    }
    r.nig = capture([&] { return fit_nig_sample(xs, cfg.zeta_threshold); });
    if (r.nig.ok() && r.nig.value->unstable)
        r.warnings.push_back("nig: unstable fit, zeta = " + std::to_string(r.nig.value->shape.zeta) +
                             " exceeds threshold " + std::to_string(cfg.zeta_threshold));

    if (r.moments.error) note(r.warnings, "moments", *r.moments.error);
    if (r.right_tail.hill.error) note(r.warnings, "hill-right", *r.right_tail.hill.error);
    if (r.left_tail.hill.error) note(r.warnings, "hill-left", *r.left_tail.hill.error);
    if (r.right_tail.pickands.error) note(r.warnings, "pickands-right", *r.right_tail.pickands.error);
    if (r.left_tail.pickands.error) note(r.warnings, "pickands-left", *r.left_tail.pickands.error);
    if (r.m_test.result.error) note(r.warnings, "m-test", *r.m_test.result.error);
    if (r.hurst.error) note(r.warnings, "hurst", *r.hurst.error);
    if (r.nig.error) note(r.warnings, "nig", *r.nig.error);
    return r;
}

std::vector<DiagnosticReport> analyze_windows(std::span<const Window> windows,
                                              const AnalysisConfig& cfg,
                                              const CalibrationSet& calibration,
                                              const std::string& instrument, unsigned threads) {
    validate(cfg);
    std::vector<DiagnosticReport> out(windows.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, windows.size()));
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> workers;
        for (unsigned t = 0; t < threads; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < windows.size(); i += threads)
                        out[i] = analyze_window(windows[i], cfg, calibration, instrument);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

}  // namespace fxdiag
