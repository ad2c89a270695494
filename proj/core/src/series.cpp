#include "fxdiag/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "fxdiag/error.hpp"

namespace fxdiag {

bool parse_date(std::string_view text, Date& out) noexcept {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    auto field = [&](std::size_t pos, std::size_t len, int& v) {
        auto first = text.data() + pos;
        auto [ptr, ec] = std::from_chars(first, first + len, v);
        return ec == std::errc{} && ptr == first + len;
    };
    int y = 0, m = 0, d = 0;
    if (!field(0, 4, y) || !field(5, 2, m) || !field(8, 2, d)) return false;
    Date candidate{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                   std::chrono::day{static_cast<unsigned>(d)}};
    if (!candidate.ok()) return false;
    out = candidate;
    return true;
}

std::string format_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                  static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
    return buf;
}

Series::Series(std::vector<Observation> points) : points_(std::move(points)) {
    if (points_.size() < 2) fail(ErrorKind::InvalidInput, "series needs at least 2 observations");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.value))
            fail(ErrorKind::InvalidInput, "non-finite value at point " + std::to_string(i) + " (" +
                                              format_date(p.date) + ")");
        if (p.value <= 0.0)
            fail(ErrorKind::InvalidInput, "nonpositive value at point " + std::to_string(i) + " (" +
                                              format_date(p.date) + ")");
        if (i > 0 && !(points_[i - 1].date < p.date))
            fail(ErrorKind::InvalidInput,
                 "dates not strictly increasing at point " + std::to_string(i) + " (" +
                     format_date(p.date) + ")");
    }
}

std::vector<Observation> Series::slice(Date from, Date to) const {
    std::vector<Observation> out;
    for (const auto& p : points_)
        if (!(p.date < from) && !(to < p.date)) out.push_back(p);
    return out;
}

Increments::Increments(std::vector<double> xs) : xs_(std::move(xs)) {
    for (std::size_t i = 0; i < xs_.size(); ++i)
        if (!std::isfinite(xs_[i]))
            fail(ErrorKind::InvalidInput, "non-finite increment at index " + std::to_string(i));
}

Increments log_increments(std::span<const double> values) {
    if (values.size() < 2) fail(ErrorKind::InvalidInput, "series shorter than 2 points");
    std::vector<double> xs(values.size() - 1);
    for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        if (!(values[k] > 0.0) || !(values[k + 1] > 0.0))
            fail(ErrorKind::InvalidInput, "nonpositive value near index " + std::to_string(k));
        xs[k] = std::log(values[k + 1] / values[k]);
    }
    return Increments(std::move(xs));
}

Increments log_increments(const Series& series) {
    std::vector<double> values;
    values.reserve(series.size());
    for (const auto& p : series.points()) values.push_back(p.value);
    return log_increments(values);
}

double sample_mean(std::span<const double> xs) {
    if (xs.empty()) fail(ErrorKind::InsufficientData, "mean of empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double empirical_variance(std::span<const double> xs) {
    if (xs.size() < 2) fail(ErrorKind::InsufficientData, "variance needs n >= 2");
    const double mean = sample_mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

MomentSummary moment_summary(std::span<const double> xs) {
    if (xs.size() < 4) fail(ErrorKind::InsufficientData, "moment summary needs n >= 4");
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*lo == *hi) fail(ErrorKind::Degenerate, "zero variance sample");
    const double n = static_cast<double>(xs.size());
    const double mean = sample_mean(xs);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    if (m2 <= 0.0) fail(ErrorKind::Degenerate, "zero variance sample");
    const double variance = m2 / (n - 1.0);
    m2 /= n;
    m3 /= n;
    m4 /= n;
    return {mean, variance, m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

}  // namespace fxdiag
