#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fxdiag/random.hpp"

namespace fxdiag::testutil {

inline std::vector<double> uniforms(std::size_t n, Engine& eng) {
    std::vector<double> out(n);
    for (auto& x : out) x = uniform01(eng);
    return out;
}

/// Exact Pareto with tail index a (gamma = 1/a): X = U^{-1/a}, support [1, inf).
inline std::vector<double> pareto(std::size_t n, double a, Engine& eng) {
    std::vector<double> out(n);
    for (auto& x : out) x = std::pow(uniform_open(eng), -1.0 / a);
    return out;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace fxdiag::testutil
