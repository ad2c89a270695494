#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fxdiag {

using Date = std::chrono::year_month_day;

/// Parses an ISO-8601 calendar date (YYYY-MM-DD). Returns false on malformed or invalid dates.
bool parse_date(std::string_view text, Date& out) noexcept;
std::string format_date(Date d);

struct Observation {
    Date date;
    double value;
};

/// Dated, strictly positive observations of one instrument with strictly increasing dates.
class Series {
public:
    /// Validates every invariant; throws Error(InvalidInput) naming the offending point.
    explicit Series(std::vector<Observation> points);

    std::span<const Observation> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    Date first_date() const noexcept { return points_.front().date; }
    Date last_date() const noexcept { return points_.back().date; }

    /// Observations with date in [from, to], or an empty vector.
    std::vector<Observation> slice(Date from, Date to) const;

private:
    std::vector<Observation> points_;
};

/// Log-return sample x_k = ln(X_{k+1} / X_k); every element finite.
class Increments {
public:
    Increments() = default;
    explicit Increments(std::vector<double> xs);

    std::span<const double> values() const noexcept { return xs_; }
    std::size_t size() const noexcept { return xs_.size(); }
    double operator[](std::size_t i) const noexcept { return xs_[i]; }

private:
    std::vector<double> xs_;
};

Increments log_increments(const Series& series);
/// Same transform on bare values; used where no dates are attached.
Increments log_increments(std::span<const double> values);

struct MomentSummary {
    double mean;
    double variance;         // divisor n-1
    double skewness;         // m3 / m2^{3/2}, central moments with divisor n
    double excess_kurtosis;  // m4 / m2^2 - 3, divisor n
};

double sample_mean(std::span<const double> xs);

/// Unbiased sample variance, divisor n-1. Requires n >= 2.
double empirical_variance(std::span<const double> xs);

/// Requires n >= 4 and positive variance.
MomentSummary moment_summary(std::span<const double> xs);

}  // namespace fxdiag
