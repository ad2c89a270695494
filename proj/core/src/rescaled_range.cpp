#include "fxdiag/rescaled_range.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fxdiag/error.hpp"
#include "fxdiag/series.hpp"

namespace fxdiag {

RangeStat range_stat(std::span<const double> window) {
    const std::size_t n = window.size();
    if (n < 2) fail(ErrorKind::InsufficientData, "range statistic needs a window of length >= 2");
    double total = 0.0;
    for (double x : window) total += x;
    const double nd = static_cast<double>(n);

    // k = 0 contributes the bridge value 0.
    double partial = 0.0, hi = 0.0, lo = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        partial += window[k - 1];
        const double bridge = partial - static_cast<double>(k) / nd * total;
        hi = std::max(hi, bridge);
        lo = std::min(lo, bridge);
    }
    const auto [mn, mx] = std::minmax_element(window.begin(), window.end());
    const double sd = *mn == *mx ? 0.0 : std::sqrt(empirical_variance(window));
    return {hi - lo, sd};
}

std::vector<RsPoint> rs_curve(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2 * kMinRsBlock)
        fail(ErrorKind::InsufficientData, "R/S curve needs n >= 32 (got " + std::to_string(n) + ")");
    std::vector<RsPoint> points;
    std::size_t skipped_total = 0;
    for (std::size_t len = n; len >= kMinRsBlock; len /= 2) {
        const std::size_t blocks = n / len;
        RsPoint pt{len, 0.0, 0, 0};
        double sum = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            const auto st = range_stat(xs.subspan(b * len, len));
            if (st.degenerate()) {
                ++pt.blocks_skipped;
                continue;
            }
            sum += st.range / st.stddev;
            ++pt.blocks_used;
        }
        skipped_total += pt.blocks_skipped;
        // A bridge that is identically zero gives R = 0; such a scale has no usable log.
        if (pt.blocks_used > 0 && sum > 0.0) {
            pt.rs = sum / static_cast<double>(pt.blocks_used);
            points.push_back(pt);
        }
    }
    if (points.empty())
        fail(ErrorKind::Degenerate, "R/S curve: zero usable points (" + std::to_string(skipped_total) +
                                        " degenerate blocks skipped)");
    return points;
}

HurstFit hurst_estimate(std::span<const RsPoint> points) {
    std::set<std::size_t> scales;
    for (const auto& p : points) {
        if (!(p.rs > 0.0) || p.n < 2) fail(ErrorKind::InvalidInput, "R/S point must have rs > 0, n >= 2");
        scales.insert(p.n);
    }
    if (scales.size() < 3)
        fail(ErrorKind::InsufficientScales,
             "Hurst fit needs >= 3 distinct window lengths (got " + std::to_string(scales.size()) + ")");

    // Sort a copy so the fit is independent of the caller's point order.
    std::vector<RsPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end(), [](const RsPoint& a, const RsPoint& b) {
        return a.n != b.n ? a.n < b.n : a.rs < b.rs;
    });
    const double m = static_cast<double>(sorted.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& p : sorted) {
        sx += std::log(static_cast<double>(p.n));
        sy += std::log(p.rs);
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : sorted) {
        const double dx = std::log(static_cast<double>(p.n)) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.rs) - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (const auto& p : sorted) {
        const double r = std::log(p.rs) - (intercept + slope * std::log(static_cast<double>(p.n)));
        sse += r * r;
    }
    return {slope, std::exp(intercept), std::move(sorted), sse};
}

}  // namespace fxdiag
