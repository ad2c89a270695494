#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fxdiag/error.hpp"
#include "fxdiag/extrema_mtest.hpp"
#include "fxdiag/nig.hpp"
#include "fxdiag/rescaled_range.hpp"
#include "fxdiag/series.hpp"
#include "fxdiag/tail_index.hpp"

namespace fxdiag {

// ---------------------------------------------------------------------------
// Ingestion
// ---------------------------------------------------------------------------

struct CsvConfig {
    char delimiter = ',';
    /// nullopt autodetects: a first line whose date field does not parse is a header.
    std::optional<bool> header;
};

/// Two-column `date,value` CSV with ISO-8601 dates. Errors carry the 1-based physical line
/// number, plus the column for field-level problems. Blank lines are ignored.
Series parse_series(std::istream& in, const CsvConfig& cfg = {}, const std::string& source = "<input>");
Series load_series(const std::filesystem::path& path, const CsvConfig& cfg = {});

// ---------------------------------------------------------------------------
// Windowing
// ---------------------------------------------------------------------------

inline constexpr std::size_t kDefaultMinObservations = 30;
inline constexpr Date kDefaultCrisisStart{std::chrono::year{2008}, std::chrono::August,
                                          std::chrono::day{1}};

struct Window {
    std::string label;  // "2000H1", "pre-crisis", "crisis"
    Date start;         // inclusive
    Date end;           // inclusive
    std::vector<Observation> points;
    bool too_short = false;
};

/// Calendar half-years (Jan 1 - Jun 30, Jul 1 - Dec 31) intersected with the data span, in
/// chronological order. Windows below `min_obs` are kept but flagged too_short.
std::vector<Window> split_half_years(const Series& series,
                                     std::size_t min_obs = kDefaultMinObservations);

/// Pre-crisis holds dates strictly before crisis_start, crisis the rest.
std::pair<Window, Window> split_crisis(const Series& series, Date crisis_start = kDefaultCrisisStart,
                                       std::size_t min_obs = kDefaultMinObservations);

// ---------------------------------------------------------------------------
// Calibration lookup
// ---------------------------------------------------------------------------

class CalibrationSet {
public:
    CalibrationSet() = default;
    explicit CalibrationSet(std::vector<CalibrationTable> tables);

    /// Every *.json calibration document in `dir`, sorted by sample size.
    static CalibrationSet load_directory(const std::filesystem::path& dir);

    bool empty() const noexcept { return tables_.empty(); }
    std::span<const CalibrationTable> tables() const noexcept { return tables_; }
    /// Table whose sample_size is closest to n (ties go to the smaller size).
    const CalibrationTable& nearest(std::size_t n) const;

private:
    std::vector<CalibrationTable> tables_;
};

/// Series lengths of the tables shipped with the project.
inline constexpr std::array<std::size_t, 8> kCalibrationBuckets = {100, 125, 250, 500,
                                                                   1000, 2500, 5000, 10000};
inline constexpr std::size_t kShippedReplications = 10000;

/// Calibrates every bucket in-process; used when no shipped tables are available.
CalibrationSet generate_calibration_set(std::uint64_t seed,
                                        std::size_t replications = kShippedReplications);

// ---------------------------------------------------------------------------
// Battery
// ---------------------------------------------------------------------------

struct ComponentError {
    ErrorKind kind;
    std::string message;
};

template <class T>
struct Outcome {
    std::optional<T> value;
    std::optional<ComponentError> error;

    bool ok() const noexcept { return value.has_value(); }
};

struct AnalysisConfig {
    double level = 0.05;
    std::optional<std::size_t> tail_k;  // overrides the default k for every tail estimate
    std::size_t k_grid_size = 12;
    std::size_t min_obs = kDefaultMinObservations;
    double zeta_threshold = kDefaultZetaInstability;
    std::size_t density_points = 201;
};

/// Validates options that would abort the whole run; throws Error(Configuration).
void validate(const AnalysisConfig& cfg);

struct TailSide {
    Outcome<TailEstimate> hill;      // on the positive part (right) or negated negatives (left)
    Outcome<TailEstimate> pickands;  // on xs (right) or -xs (left)
    std::vector<TailScanEntry> hill_scan;
    std::vector<TailScanEntry> pickands_scan;
};

struct MTestOutcome {
    Outcome<MTestResult> result;
    std::size_t calibration_sample_size = 0;
    std::size_t calibration_replications = 0;
    std::uint64_t calibration_seed = 0;
};

struct DiagnosticReport {
    std::string instrument;
    std::string label;
    Date start;
    Date end;
    std::size_t observations = 0;
    std::size_t increments = 0;
    bool skipped = false;  // window below the minimum observation count

    Outcome<MomentSummary> moments;
    TailSide right_tail;
    TailSide left_tail;
    MTestOutcome m_test;
    Outcome<std::vector<RsPoint>> rs_points;
    Outcome<HurstFit> hurst;
    Outcome<NigSampleFit> nig;
    std::vector<std::string> warnings;
};

/// Runs every battery component on the window's log-increments, isolating failures per
/// component. Only configuration errors propagate.
DiagnosticReport analyze_window(const Window& w, const AnalysisConfig& cfg,
                                const CalibrationSet& calibration,
                                const std::string& instrument = {});

/// Analyzes windows concurrently; the result keeps the input order.
std::vector<DiagnosticReport> analyze_windows(std::span<const Window> windows,
                                              const AnalysisConfig& cfg,
                                              const CalibrationSet& calibration,
                                              const std::string& instrument = {},
                                              unsigned threads = 0);

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

struct RunMetadata {
    std::uint64_t seed = 0;
    double level = 0.05;
    std::string crisis_start = "2008-08-01";
    std::string calibration_source;  // "shipped:<dir>" or "generated"
};

/// Versioned JSON report document (schema "fxdiag.report", version 1).
std::string report_json(std::span<const DiagnosticReport> reports, const RunMetadata& meta);

/// Plot-data bodies for one window.
std::string tail_plot_data(const DiagnosticReport& r);
std::string rs_plot_data(const DiagnosticReport& r);
std::string nig_plot_data(const DiagnosticReport& r, std::size_t points);

/// Writes report.json plus three plot-data files per window; returns the written paths.
std::vector<std::filesystem::path> emit(std::span<const DiagnosticReport> reports,
                                        const RunMetadata& meta,
                                        const std::filesystem::path& out_dir,
                                        std::size_t density_points = 201);

}  // namespace fxdiag
