#include "fxdiag/tail_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fxdiag {

std::string_view to_string(TailMethod m) noexcept {
    return m == TailMethod::Hill ? "hill" : "pickands";
}

OrderStatistics::OrderStatistics(std::span<const double> sample)
    : sorted_(sample.begin(), sample.end()) {
    std::sort(sorted_.begin(), sorted_.end());
}

TailEstimate pickands(const OrderStatistics& os, std::size_t k) {
    const std::size_t n = os.size();
    if (k == 0) fail(ErrorKind::InvalidInput, "pickands: k must be positive");
    if (n < 4 * k)
        fail(ErrorKind::InsufficientData,
             "pickands: need n >= 4k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    const double top = os.at(n - k + 1);
    const double mid = os.at(n - 2 * k + 1);
    const double low = os.at(n - 4 * k + 1);
    const double upper_gap = top - mid;
    const double lower_gap = mid - low;
    if (upper_gap <= 0.0 || lower_gap <= 0.0)
        fail(ErrorKind::Degenerate, "pickands: tied order statistics at k=" + std::to_string(k));
    return {std::log(upper_gap / lower_gap) / std::numbers::ln2, k, TailMethod::Pickands};
}

TailEstimate pickands(std::span<const double> xs, std::size_t k) {
    return pickands(OrderStatistics(xs), k);
}

TailEstimate hill(const OrderStatistics& os, std::size_t k) {
    const std::size_t n = os.size();
    if (k == 0) fail(ErrorKind::InvalidInput, "hill: k must be positive");
    if (k >= n)
        fail(ErrorKind::InsufficientData,
             "hill: need k < n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    const double threshold = os.at(n - k);
    if (!(threshold > 0.0))
        fail(ErrorKind::Domain, "hill: top k+1 order statistics must be positive");
    const double log_threshold = std::log(threshold);
    double sum = 0.0;
    for (std::size_t i = 1; i <= k; ++i) sum += std::log(os.at(n - i + 1)) - log_threshold;
    return {sum / static_cast<double>(k), k, TailMethod::Hill};
}

TailEstimate hill(std::span<const double> xs, std::size_t k) { return hill(OrderStatistics(xs), k); }

std::size_t default_tail_k(std::size_t n, TailMethod method) {
    // The epsilon keeps exact powers (e.g. 1e5^0.6 = 1000) from flooring one short.
    auto k = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.6) + 1e-9));
    if (method == TailMethod::Pickands && n / 4 >= 1) k = std::min(k, std::max<std::size_t>(1, n / 4 - 1));
    return std::max<std::size_t>(k, 1);
}

std::vector<std::size_t> log_spaced_grid(std::size_t k_max, std::size_t count) {
    std::vector<std::size_t> grid;
    if (k_max == 0 || count == 0) return grid;
    if (count == 1) return {k_max};
    const double span = std::log(static_cast<double>(k_max));
    for (std::size_t i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(count - 1);
        auto k = static_cast<std::size_t>(std::llround(std::exp(span * t)));
        k = std::clamp<std::size_t>(k, 1, k_max);
        if (grid.empty() || grid.back() != k) grid.push_back(k);
    }
    return grid;
}

std::vector<TailScanEntry> tail_scan(std::span<const double> xs, std::span<const std::size_t> k_grid,
                                     TailMethod method) {
    std::vector<TailScanEntry> out;
    out.reserve(k_grid.size());
    if (k_grid.empty()) return out;
    const OrderStatistics os(xs);
    for (std::size_t k : k_grid) {
        TailScanEntry entry{k, std::nullopt, std::nullopt, {}};
        try {
            entry.estimate = method == TailMethod::Hill ? hill(os, k) : pickands(os, k);
        } catch (const Error& e) {
            entry.error = e.kind();
            entry.message = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace fxdiag
