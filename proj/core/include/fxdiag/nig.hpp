#pragma once

#include <cstddef>
#include <span>

namespace fxdiag {

/// Modified Bessel function of the second kind, order one, from its integral representation
/// K1(x) = 1/2 int_0^inf exp(-x/2 (y + 1/y)) dy. Relative accuracy 1e-10 or better.
/// Throws Error(Domain) for x <= 0 and Error(Numeric) if the quadrature cap is hit or the
/// result underflows (x beyond ~700; use bessel_k1_scaled there).
double bessel_k1(double x);

/// exp(x) * K1(x), finite for every x > 0 that does not overflow 1/x.
double bessel_k1_scaled(double x);

struct NigParams {
    double alpha;  // tail heaviness
    double beta;   // asymmetry
    double delta;  // scale
    double mu;     // location
};

/// Reparameterization with zeta = delta sqrt(alpha^2 - beta^2) and tau = beta / sqrt(alpha^2 - beta^2).
struct NigShape {
    double zeta;
    double tau;
};

/// Throws Error(Domain) unless alpha > |beta| and delta > 0 (all finite).
void validate(const NigParams& p);

NigShape shape_of(const NigParams& p);
/// alpha = zeta sqrt(1 + tau^2) / delta, beta = zeta tau / delta.
NigParams params_from_shape(const NigShape& s, double delta, double mu);

struct MomentVector {
    double e;  // mean
    double v;  // variance
    double s;  // skewness
    double k;  // excess kurtosis

    /// Strict inequality 3k > 5s^2 that the closed-form inversion needs.
    bool nig_feasible() const noexcept { return 3.0 * k > 5.0 * s * s; }
};

double nig_pdf(double x, const NigParams& p);
double nig_log_pdf(double x, const NigParams& p);

MomentVector nig_moments(const NigParams& p);

/// Closed-form method-of-moments inversion:
///   tau^2 = s^2 / (3k - 5s^2), sign(tau) = sign(s); zeta = 9 / (3k - 4s^2);
///   delta = sqrt(v zeta / (1 + tau^2)); mu = e - delta tau.
/// Throws Error(GaussianLimit) for s = 0, k <= 0 and Error(Infeasible) when 3k <= 5s^2.
NigParams fit_nig_moments(const MomentVector& m);

inline constexpr double kDefaultZetaInstability = 1e3;

struct NigSampleFit {
    NigParams params;
    NigShape shape;
    MomentVector moments;  // sample moments the fit matched
    bool unstable;         // zeta above the instability threshold
    double zeta_threshold;
};

/// Method of moments on a sample, using the moment_summary conventions (divisor-n ratios for
/// skewness and kurtosis, divisor n-1 variance). Requires n >= 8.
NigSampleFit fit_nig_sample(std::span<const double> xs,
                            double zeta_threshold = kDefaultZetaInstability);

}  // namespace fxdiag
