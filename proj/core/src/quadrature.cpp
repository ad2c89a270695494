#include "fxdiag/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "fxdiag/error.hpp"

namespace fxdiag {

namespace {

// Kronrod nodes on [0, 1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const double value = kronrod * half;
    return {a, b, value, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           std::span<const double> breakpoints, const QuadratureOptions& opts) {
    if (breakpoints.size() < 2)
        fail(ErrorKind::InvalidInput, "integration needs at least two breakpoints");
    std::priority_queue<Segment> heap;
    double total = 0.0, total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!(breakpoints[i] < breakpoints[i + 1]))
            fail(ErrorKind::InvalidInput, "integration breakpoints must be strictly increasing");
        Segment s = gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    }
    std::size_t evaluations = 15 * heap.size();

    auto converged = [&] {
        return total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    };
    while (!converged()) {
        if (heap.size() >= opts.max_intervals) {
            std::ostringstream msg;
            msg << "quadrature did not converge on [" << breakpoints.front() << ", "
                << breakpoints.back() << "]: " << heap.size() << " intervals, " << evaluations
                << " evaluations, value " << total << ", error estimate " << total_err;
            fail(ErrorKind::Numeric, msg.str());
        }
        const Segment worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // Interval at machine resolution; nothing left to refine.
            heap.push({worst.a, worst.b, worst.value, 0.0});
            total_err -= worst.error;
            continue;
        }
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum from the final partition to shed accumulated update roundoff.
    double value = 0.0, error = 0.0;
    const std::size_t intervals = heap.size();
    std::vector<Segment> parts;
    parts.reserve(intervals);
    while (!heap.empty()) {
        parts.push_back(heap.top());
        heap.pop();
    }
    std::sort(parts.begin(), parts.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
    for (const auto& s : parts) {
        value += s.value;
        error += s.error;
    }
    if (!std::isfinite(value)) fail(ErrorKind::Numeric, "quadrature produced a non-finite value");
    return {value, error, evaluations, intervals};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    const std::array<double, 2> ends{a, b};
    return integrate(f, ends, opts);
}

}  // namespace fxdiag
