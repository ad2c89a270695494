#pragma once

// Synthetic data generators for the `simulate` subcommand and the test suites. Kept out of the
// core library, which ships no random-variate generators.

#include <cstddef>
#include <vector>

#include "fxdiag/nig.hpp"
#include "fxdiag/random.hpp"
#include "fxdiag/series.hpp"

namespace fxdiag::sim {

std::vector<double> gaussian(std::size_t n, double mean, double sd, Engine& eng);

/// Inverse Gaussian with mean m and shape lambda (Michael, Schucany and Haas transformation).
double inverse_gaussian(double m, double lambda, Engine& eng);

/// NIG draws through the normal variance-mean mixture x = mu + beta z + sqrt(z) n with
/// z ~ IG(delta / gamma, delta^2), gamma = sqrt(alpha^2 - beta^2).
std::vector<double> nig(std::size_t n, const NigParams& p, Engine& eng);

/// Monday-to-Friday dates in [start, end].
std::vector<Date> working_days(Date start, Date end);

/// Price path X_0 = x0, X_{k+1} = X_k exp(increments[k]); needs dates.size() == increments.size() + 1.
Series price_path(const std::vector<Date>& dates, double x0, const std::vector<double>& increments);

}  // namespace fxdiag::sim
