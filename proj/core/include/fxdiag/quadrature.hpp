#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace fxdiag {

struct QuadratureOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
};

struct QuadratureResult {
    double value;
    double error;
    std::size_t evaluations;
    std::size_t intervals;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b]. The interval with
/// the largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * |value|). Throws Error(Numeric) when max_intervals is exhausted.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// As above, with the initial partition given by sorted breakpoints a = p0 < p1 < ... < pm = b.
QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints, const QuadratureOptions& opts = {});

}  // namespace fxdiag
