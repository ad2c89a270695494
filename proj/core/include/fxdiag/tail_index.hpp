#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fxdiag/error.hpp"

namespace fxdiag {

/// Ascending copy of a sample, shared by both tail estimators.
class OrderStatistics {
public:
    explicit OrderStatistics(std::span<const double> sample);

    std::size_t size() const noexcept { return sorted_.size(); }
    /// 1-based order statistic X_(i), X_(1) <= ... <= X_(n).
    double at(std::size_t i) const { return sorted_.at(i - 1); }
    std::span<const double> sorted() const noexcept { return sorted_; }

private:
    std::vector<double> sorted_;
};

enum class TailMethod { Pickands, Hill };

std::string_view to_string(TailMethod m) noexcept;

struct TailEstimate {
    double gamma_hat;
    std::size_t k;
    TailMethod method;
};

/// gamma = ln[(X_(n-k+1) - X_(n-2k+1)) / (X_(n-2k+1) - X_(n-4k+1))] / ln 2. Requires n >= 4k.
TailEstimate pickands(const OrderStatistics& os, std::size_t k);
TailEstimate pickands(std::span<const double> xs, std::size_t k);

/// gamma = (1/k) sum_{i=1..k} ln X_(n-i+1) - ln X_(n-k). Requires k < n and a positive top k+1.
TailEstimate hill(const OrderStatistics& os, std::size_t k);
TailEstimate hill(std::span<const double> xs, std::size_t k);

/// floor(n^0.6); Pickands additionally clamps to n/4 - 1 (at least 1).
std::size_t default_tail_k(std::size_t n, TailMethod method);

/// Up to `count` distinct log-spaced integers in [1, k_max], ascending.
std::vector<std::size_t> log_spaced_grid(std::size_t k_max, std::size_t count);

struct TailScanEntry {
    std::size_t k;
    std::optional<TailEstimate> estimate;
    std::optional<ErrorKind> error;
    std::string message;
};

/// One entry per grid point in grid order; per-k failures are recorded, not thrown.
std::vector<TailScanEntry> tail_scan(std::span<const double> xs, std::span<const std::size_t> k_grid,
                                     TailMethod method);

}  // namespace fxdiag
