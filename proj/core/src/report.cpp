#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "fxdiag/pipeline.hpp"

namespace fxdiag {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kReportSchema = "fxdiag.report";
constexpr int kReportVersion = 1;

json error_json(const ComponentError& e) {
    return json{{"kind", to_string(e.kind)}, {"message", e.message}};
}

template <class T, class F>
json outcome_json(const Outcome<T>& o, F&& render) {
    if (o.value) return json{{"ok", true}, {"result", render(*o.value)}};
    return json{{"ok", false}, {"error", o.error ? error_json(*o.error) : json(nullptr)}};
}

json tail_json(const TailEstimate& t) {
    return json{{"method", to_string(t.method)}, {"k", t.k}, {"gamma_hat", t.gamma_hat}};
}

json scan_json(const std::vector<TailScanEntry>& scan) {
    json arr = json::array();
    for (const auto& e : scan) {
        json item{{"k", e.k}};
        if (e.estimate) item["gamma_hat"] = e.estimate->gamma_hat;
        else item["error"] = json{{"kind", e.error ? to_string(*e.error) : "unknown"}, {"message", e.message}};
        arr.push_back(std::move(item));
    }
    return arr;
}

json side_json(const TailSide& side) {
    return json{{"hill", outcome_json(side.hill, tail_json)},
                {"pickands", outcome_json(side.pickands, tail_json)},
                {"hill_scan", scan_json(side.hill_scan)},
                {"pickands_scan", scan_json(side.pickands_scan)}};
}

json rs_points_json(const std::vector<RsPoint>& pts) {
    json arr = json::array();
    for (const auto& p : pts)
        arr.push_back(json{{"n", p.n}, {"rs", p.rs}, {"blocks_used", p.blocks_used},
                           {"blocks_skipped", p.blocks_skipped}});
    return arr;
}

json window_json(const DiagnosticReport& r) {
    json w;
    w["instrument"] = r.instrument;
    w["label"] = r.label;
    w["start"] = format_date(r.start);
    w["end"] = format_date(r.end);
    w["observations"] = r.observations;
    w["increments"] = r.increments;
    w["skipped"] = r.skipped;
    w["moments"] = outcome_json(r.moments, [](const MomentSummary& m) {
        return json{{"mean", m.mean},
                    {"variance", m.variance},
                    {"skewness", m.skewness},
                    {"excess_kurtosis", m.excess_kurtosis}};
    });
    w["tails"] = json{{"right", side_json(r.right_tail)}, {"left", side_json(r.left_tail)}};
    w["m_test"] = outcome_json(r.m_test.result, [](const MTestResult& m) {
        return json{{"reject", m.reject},
                    {"m_hat", m.statistic.m_hat},
                    {"xi", m.statistic.xi},
                    {"n_gaps", m.statistic.n_gaps},
                    {"level", m.level},
                    {"lower_fractile", m.lower_fractile},
                    {"upper_fractile", m.upper_fractile},
                    {"p_bracket", json::array({m.p_low, m.p_high})}};
    });
    w["m_test"]["calibration"] = json{{"sample_size", r.m_test.calibration_sample_size},
                                      {"replications", r.m_test.calibration_replications},
                                      {"seed", r.m_test.calibration_seed}};
    w["rs_curve"] = outcome_json(r.rs_points, rs_points_json);
    w["hurst"] = outcome_json(r.hurst, [](const HurstFit& h) {
        return json{{"h_hat", h.h_hat}, {"c_hat", h.c_hat}, {"residual_sse", h.residual_sse},
                    {"scales", h.points.size()}};
    });
    w["nig"] = outcome_json(r.nig, [](const NigSampleFit& f) {
        return json{{"alpha", f.params.alpha},
                    {"beta", f.params.beta},
                    {"delta", f.params.delta},
                    {"mu", f.params.mu},
                    {"zeta", f.shape.zeta},
                    {"tau", f.shape.tau},
                    {"moments", json{{"e", f.moments.e}, {"v", f.moments.v}, {"s", f.moments.s},
                                     {"k", f.moments.k}}},
                    {"unstable", f.unstable},
                    {"zeta_threshold", f.zeta_threshold}};
    });
    w["warnings"] = r.warnings;
    return w;
}

std::string number(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string file_stem(const DiagnosticReport& r) {
    std::string stem = r.instrument.empty() ? r.label : r.instrument + "_" + r.label;
    for (char& c : stem)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
    return stem;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
    out << body;
    if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace

std::string report_json(std::span<const DiagnosticReport> reports, const RunMetadata& meta) {
    json doc;
    doc["schema"] = kReportSchema;
    doc["version"] = kReportVersion;
    doc["conventions"] = json{
        {"increments", "x_k = ln(X_{k+1} / X_k) between consecutive observations"},
        {"variance", "unbiased, divisor n-1"},
        {"skewness", "m3 / m2^(3/2), central moments with divisor n"},
        {"excess_kurtosis", "m4 / m2^2 - 3, central moments with divisor n"},
        {"pickands", "ln[(X(n-k+1) - X(n-2k+1)) / (X(n-2k+1) - X(n-4k+1))] / ln 2"},
        {"hill", "mean of ln X(n-i+1), i = 1..k, minus ln X(n-k); right tail on positive "
                 "increments, left tail on negated negative increments"},
        {"m_test", "xi = sqrt(gaps) * (mean gap - 3/2), two-sided against calibrated fractiles"},
        {"rescaled_range", "dyadic disjoint blocks of length >= 16, least squares of ln R/S on ln n"},
        {"nig", "closed-form method of moments; unstable when zeta exceeds the threshold"}};
    doc["run"] = json{{"seed", meta.seed},
                      {"level", meta.level},
                      {"crisis_start", meta.crisis_start},
                      {"calibration_source", meta.calibration_source}};
    json windows = json::array();
    for (const auto& r : reports) windows.push_back(window_json(r));
    doc["windows"] = std::move(windows);
    return doc.dump(2) + "\n";
}

std::string tail_plot_data(const DiagnosticReport& r) {
    std::string body = "# tail index vs k: " + r.instrument + " " + r.label + "\n# method tail k gamma_hat\n";
    auto rows = [&](const char* method, const char* tail, const std::vector<TailScanEntry>& scan) {
        for (const auto& e : scan)
            body += std::string(method) + " " + tail + " " + std::to_string(e.k) + " " +
                    number(e.estimate ? e.estimate->gamma_hat : std::nan("")) + "\n";
    };
    rows("hill", "right", r.right_tail.hill_scan);
    rows("hill", "left", r.left_tail.hill_scan);
    rows("pickands", "right", r.right_tail.pickands_scan);
    rows("pickands", "left", r.left_tail.pickands_scan);
    return body;
}

std::string rs_plot_data(const DiagnosticReport& r) {
    std::string body = "# rescaled range: " + r.instrument + " " + r.label + "\n# ln_n ln_rs\n";
    if (!r.rs_points.ok()) return body + "# unavailable: " + r.rs_points.error->message + "\n";
    for (const auto& p : *r.rs_points.value)
        body += number(std::log(static_cast<double>(p.n))) + " " + number(std::log(p.rs)) + "\n";
    return body;
}

std::string nig_plot_data(const DiagnosticReport& r, std::size_t points) {
    std::string body = "# fitted NIG density: " + r.instrument + " " + r.label + "\n# x density\n";
    if (!r.nig.ok()) return body + "# unavailable: " + r.nig.error->message + "\n";
    const auto& fit = *r.nig.value;
    const double sd = std::sqrt(fit.moments.v);
    const double lo = fit.moments.e - 5.0 * sd;
    const double step = 10.0 * sd / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        const double x = lo + step * static_cast<double>(i);
        double density = std::nan("");
        try {
            density = nig_pdf(x, fit.params);
        } catch (const Error&) {
        }
        body += number(x) + " " + number(density) + "\n";
    }
    return body;
}

std::vector<std::filesystem::path> emit(std::span<const DiagnosticReport> reports,
                                        const RunMetadata& meta, const std::filesystem::path& out_dir,
                                        std::size_t density_points) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) fail(ErrorKind::Io, "cannot create output directory " + out_dir.string() + ": " + ec.message());
    std::vector<std::filesystem::path> written;
    const auto report_path = out_dir / "report.json";
    write_file(report_path, report_json(reports, meta));
    written.push_back(report_path);
    for (const auto& r : reports) {
        const std::string stem = file_stem(r);
        const std::pair<std::string, std::string> files[] = {
            {stem + "_tails.dat", tail_plot_data(r)},
            {stem + "_rs.dat", rs_plot_data(r)},
            {stem + "_nig.dat", nig_plot_data(r, std::max<std::size_t>(density_points, 2))}};
        for (const auto& [name, body] : files) {
            write_file(out_dir / name, body);
            written.push_back(out_dir / name);
        }
    }
    return written;
}

}  // namespace fxdiag
