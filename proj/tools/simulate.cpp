#include "simulate.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "fxdiag/error.hpp"

namespace fxdiag::sim {

std::vector<double> gaussian(std::size_t n, double mean, double sd, Engine& eng) {
    std::normal_distribution<double> normal(mean, sd);
    std::vector<double> out(n);
    for (auto& x : out) x = normal(eng);
    return out;
}

double inverse_gaussian(double m, double lambda, Engine& eng) {
    std::normal_distribution<double> normal;
    const double g = normal(eng);
    const double y = g * g;
    const double x = m + m * m * y / (2.0 * lambda) -
                     m / (2.0 * lambda) * std::sqrt(4.0 * m * lambda * y + m * m * y * y);
    return uniform01(eng) <= m / (m + x) ? x : m * m / x;
}

std::vector<double> nig(std::size_t n, const NigParams& p, Engine& eng) {
    validate(p);
    const double gamma = std::sqrt((p.alpha - p.beta) * (p.alpha + p.beta));
    std::normal_distribution<double> normal;
    std::vector<double> out(n);
    for (auto& x : out) {
        const double z = inverse_gaussian(p.delta / gamma, p.delta * p.delta, eng);
        x = p.mu + p.beta * z + std::sqrt(z) * normal(eng);
    }
    return out;
}

std::vector<Date> working_days(Date start, Date end) {
    using namespace std::chrono;
    std::vector<Date> out;
    for (sys_days d{start}; d <= sys_days{end}; d += days{1}) {
        const weekday wd{d};
        if (wd != Saturday && wd != Sunday) out.emplace_back(d);
    }
    return out;
}

Series price_path(const std::vector<Date>& dates, double x0, const std::vector<double>& increments) {
    if (dates.size() != increments.size() + 1)
        fail(ErrorKind::InvalidInput, "price path needs one more date than increments");
    std::vector<Observation> pts;
    pts.reserve(dates.size());
    double level = x0;
    pts.push_back({dates[0], level});
    for (std::size_t i = 0; i < increments.size(); ++i) {
        level *= std::exp(increments[i]);
        pts.push_back({dates[i + 1], level});
    }
    return Series(std::move(pts));
}

}  // namespace fxdiag::sim
