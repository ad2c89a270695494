#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fxdiag {

struct RangeStat {
    double range;   // R(n), spread of the mean-adjusted partial-sum bridge
    double stddev;  // S(n), square root of the divisor-(n-1) variance
    bool degenerate() const noexcept { return !(stddev > 0.0); }
};

/// R over k = 0..n-1 of S_k - (k/n) S_n with S_0 = 0, and the window standard deviation.
RangeStat range_stat(std::span<const double> window);

struct RsPoint {
    std::size_t n;
    double rs;  // mean of per-block R/S at window length n
    std::size_t blocks_used = 0;
    std::size_t blocks_skipped = 0;
};

inline constexpr std::size_t kMinRsBlock = 16;

/// Dyadic disjoint-block scheme: window lengths floor(n / 2^j) >= 16; degenerate blocks are
/// skipped and counted. Requires n >= 32.
std::vector<RsPoint> rs_curve(std::span<const double> xs);

struct HurstFit {
    double h_hat;
    double c_hat;
    std::vector<RsPoint> points;
    double residual_sse;
};

/// Least squares of ln(rs) on ln(n). Requires at least 3 distinct window lengths.
HurstFit hurst_estimate(std::span<const RsPoint> points);

}  // namespace fxdiag
