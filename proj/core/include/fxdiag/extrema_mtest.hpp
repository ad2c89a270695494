#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fxdiag {

/// Expected gap between consecutive local extrema of an i.i.d. continuous sequence.
inline constexpr double kMeanExtremaGap = 1.5;

enum class ExtremumKind { Max, Min };

struct Extremum {
    std::size_t index;
    ExtremumKind kind;

    friend bool operator==(const Extremum&, const Extremum&) = default;
};

/// Interior strict local extrema in index order and the gaps between consecutive ones.
/// Max and Min alternate along `positions`; taus[i] = positions[i+1].index - positions[i].index.
struct ExtremaTrace {
    std::vector<Extremum> positions;
    std::vector<std::size_t> taus;
};

/// Throws Error(Tie) on adjacent equal values and Error(InsufficientData) for n < 3.
ExtremaTrace local_extrema(std::span<const double> xs);

struct MTestStatistic {
    double m_hat;  // mean gap
    double xi;     // sqrt(n_gaps) * (m_hat - 3/2)
    std::size_t n_gaps;
};

MTestStatistic m_test_statistic(const ExtremaTrace& trace);

/// Probability levels at which calibration tables store fractiles of xi.
inline constexpr std::array<double, 11> kCalibrationLevels = {
    0.005, 0.01, 0.025, 0.05, 0.1, 0.5, 0.9, 0.95, 0.975, 0.99, 0.995};

/// Two-sided significance levels whose fractile pairs are present in every table.
inline constexpr std::array<double, 5> kSupportedTestLevels = {0.01, 0.02, 0.05, 0.1, 0.2};

struct CalibrationTable {
    std::size_t sample_size = 0;
    std::size_t replications = 0;
    std::uint64_t seed = 0;
    double mean = 0.0;
    double variance = 0.0;
    std::vector<std::pair<double, double>> fractiles;  // (level, quantile), sorted by level

    /// Quantile stored for `level`; throws Error(Configuration) when absent.
    double fractile(double level) const;

    friend bool operator==(const CalibrationTable&, const CalibrationTable&) = default;
};

enum class CalibrationBase { Uniform, Gaussian };

/// xi for replications [first, first + count) of a calibration run. Replication r draws from
/// substream(seed, r), so any partition of the index range reproduces the same values.
std::vector<double> simulate_xi(std::size_t sample_size, std::uint64_t seed, std::size_t first,
                                std::size_t count, CalibrationBase base = CalibrationBase::Uniform);

/// Summarizes a pooled xi sample (in replication order) into a table. Fractiles use the
/// nearest-rank quantile.
CalibrationTable table_from_pool(std::size_t sample_size, std::uint64_t seed,
                                 std::span<const double> pool);

/// Requires sample_size >= 100 and replications >= 100. `threads` = 0 picks the hardware count.
CalibrationTable calibrate(std::size_t sample_size, std::size_t replications, std::uint64_t seed,
                           unsigned threads = 0, CalibrationBase base = CalibrationBase::Uniform);

std::string to_json(const CalibrationTable& table);
CalibrationTable calibration_from_json(const std::string& text);
void save_calibration(const CalibrationTable& table, const std::filesystem::path& path);
CalibrationTable load_calibration(const std::filesystem::path& path);

struct MTestResult {
    bool reject;
    MTestStatistic statistic;
    double level;
    double lower_fractile;  // quantile at level/2
    double upper_fractile;  // quantile at 1 - level/2
    double p_low;           // two-sided p-value lies in (p_low, p_high]
    double p_high;
};

/// Rejects the i.i.d. hypothesis iff xi lies outside [q(level/2), q(1 - level/2)].
MTestResult m_test(std::span<const double> xs, const CalibrationTable& table, double level);

}  // namespace fxdiag
