#include "fxdiag/nig.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fxdiag/error.hpp"
#include "fxdiag/quadrature.hpp"
#include "fxdiag/series.hpp"

namespace fxdiag {

namespace {

// Integrand cutoff: beyond x (cosh t - 1) = 700 the scaled integrand is below e^-700.
constexpr double kExponentCutoff = 700.0;

}  // namespace

double bessel_k1_scaled(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        std::ostringstream msg;
        msg << "bessel_k1: argument must be positive and finite (got " << x << ")";
        fail(ErrorKind::Domain, msg.str());
    }
    // y = e^t folds the integral onto t >= 0:
    //   e^x K1(x) = int_0^inf exp(-x (cosh t - 1)) cosh t dt,   cosh t - 1 = 2 sinh^2(t/2).
    const double upper = std::acosh(1.0 + kExponentCutoff / x);
    if (!std::isfinite(upper)) fail(ErrorKind::Numeric, "bessel_k1: argument too small");
    auto integrand = [x](double t) {
        const double h = std::sinh(0.5 * t);
        return std::exp(-2.0 * x * h * h) * std::cosh(t);
    };
    QuadratureOptions opts;
    opts.rel_tol = 1e-13;
    opts.max_intervals = 2000;
    if (x < 1.0) {
        // Interior maximum where cosh t = 1/x.
        const double peak = std::acosh(1.0 / x);
        if (peak > 0.0 && peak < upper) {
            const std::array<double, 3> pts{0.0, peak, upper};
            return integrate(integrand, pts, opts).value;
        }
    }
    return integrate(integrand, 0.0, upper, opts).value;
}

double bessel_k1(double x) {
    const double value = std::exp(-x) * bessel_k1_scaled(x);
    if (!(value >= std::numeric_limits<double>::min())) {
        std::ostringstream msg;
        msg << "bessel_k1: result underflows at x = " << x;
        fail(ErrorKind::Numeric, msg.str());
    }
    return value;
}

void validate(const NigParams& p) {
    const bool finite = std::isfinite(p.alpha) && std::isfinite(p.beta) && std::isfinite(p.delta) &&
                        std::isfinite(p.mu);
    if (!finite || !(p.alpha > std::abs(p.beta)) || !(p.delta > 0.0)) {
        std::ostringstream msg;
        msg << "NIG parameters need alpha > |beta| and delta > 0 (got alpha=" << p.alpha
            << ", beta=" << p.beta << ", delta=" << p.delta << ", mu=" << p.mu << ")";
        fail(ErrorKind::Domain, msg.str());
    }
}

NigShape shape_of(const NigParams& p) {
    validate(p);
    const double gamma = std::sqrt((p.alpha - p.beta) * (p.alpha + p.beta));
    return {p.delta * gamma, p.beta / gamma};
}

NigParams params_from_shape(const NigShape& s, double delta, double mu) {
    const double root = std::sqrt(1.0 + s.tau * s.tau);
    return {s.zeta * root / delta, s.zeta * s.tau / delta, delta, mu};
}

double nig_log_pdf(double x, const NigParams& p) {
    validate(p);
    const double gamma = std::sqrt((p.alpha - p.beta) * (p.alpha + p.beta));
    const double dx = x - p.mu;
    const double r = std::hypot(p.delta, dx);
    const double z = p.alpha * r;
    return std::log(p.alpha * p.delta / std::numbers::pi) + std::log(bessel_k1_scaled(z)) - z -
           std::log(r) + p.delta * gamma + p.beta * dx;
}

double nig_pdf(double x, const NigParams& p) { return std::exp(nig_log_pdf(x, p)); }

MomentVector nig_moments(const NigParams& p) {
    const auto [zeta, tau] = shape_of(p);
    const double t2 = tau * tau;
    return {p.mu + p.delta * tau, p.delta * p.delta * (1.0 + t2) / zeta,
            3.0 * tau / std::sqrt(zeta * (1.0 + t2)), 3.0 / zeta * (1.0 + 4.0 * t2 / (1.0 + t2))};
}

NigParams fit_nig_moments(const MomentVector& m) {
    if (!(m.v > 0.0) || !std::isfinite(m.v) || !std::isfinite(m.e) || !std::isfinite(m.s) ||
        !std::isfinite(m.k))
        fail(ErrorKind::InvalidInput, "NIG fit needs finite moments with positive variance");
    if (m.s == 0.0 && m.k <= 0.0)
        fail(ErrorKind::GaussianLimit,
             "NIG fit: zero skewness with nonpositive excess kurtosis is the Gaussian limit "
             "(zeta -> infinity); no finite NIG matches");
    const double gap = 3.0 * m.k - 5.0 * m.s * m.s;
    if (!(gap > 0.0)) {
        std::ostringstream msg;
        msg << "NIG fit: infeasible moments, need 3k > 5s^2 but 3k = " << 3.0 * m.k
            << " <= 5s^2 = " << 5.0 * m.s * m.s;
        fail(ErrorKind::Infeasible, msg.str());
    }
    const double tau = std::copysign(std::sqrt(m.s * m.s / gap), m.s);
    const double zeta = 9.0 / (3.0 * m.k - 4.0 * m.s * m.s);
    const double delta = std::sqrt(m.v * zeta / (1.0 + tau * tau));
    return params_from_shape({zeta, tau}, delta, m.e - delta * tau);
}

NigSampleFit fit_nig_sample(std::span<const double> xs, double zeta_threshold) {
    if (xs.size() < 8) fail(ErrorKind::InsufficientData, "NIG fit needs n >= 8");
    const auto summary = moment_summary(xs);
    const MomentVector moments{summary.mean, summary.variance, summary.skewness,
                               summary.excess_kurtosis};
    NigParams params;
    try {
        params = fit_nig_moments(moments);
    } catch (const Error& e) {
        std::ostringstream msg;
        msg << e.what() << " [sample s = " << moments.s << ", k = " << moments.k << "]";
        fail(e.kind(), msg.str());
    }
    const auto shape = shape_of(params);
    return {params, shape, moments, shape.zeta > zeta_threshold, zeta_threshold};
}

}  // namespace fxdiag
