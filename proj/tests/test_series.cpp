#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fxdiag/error.hpp"
#include "fxdiag/series.hpp"
#include "support.hpp"

using namespace fxdiag;
using namespace std::chrono;

namespace {

Date d(int y, unsigned m, unsigned dd) { return Date{year{y}, month{m}, day{dd}}; }

Series series_of(std::vector<double> values) {
    std::vector<Observation> pts;
    sys_days day0{d(2000, 1, 3)};
    for (std::size_t i = 0; i < values.size(); ++i)
        pts.push_back({Date{day0 + days{static_cast<int>(i)}}, values[i]});
    return Series(std::move(pts));
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an fxdiag::Error";
    return ErrorKind::Io;
}

}  // namespace

TEST(Series, RejectsInvalidPoints) {
    EXPECT_EQ(kind_of([] { series_of({1.0}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { series_of({1.0, 0.0}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { series_of({1.0, std::nan("")}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { series_of({1.0, INFINITY}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { Series({{d(2000, 1, 4), 1.0}, {d(2000, 1, 4), 2.0}}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { Series({{d(2000, 1, 5), 1.0}, {d(2000, 1, 4), 2.0}}); }), ErrorKind::InvalidInput);
}

TEST(Series, DateRoundTrip) {
    Date out;
    ASSERT_TRUE(parse_date("2008-08-01", out));
    EXPECT_EQ(out, d(2008, 8, 1));
    EXPECT_EQ(format_date(out), "2008-08-01");
    EXPECT_FALSE(parse_date("2008-02-30", out));
    EXPECT_FALSE(parse_date("2008/08/01", out));
    EXPECT_FALSE(parse_date("08-08-01", out));
}

TEST(LogIncrements, ExactLogarithms) {
    const auto inc = log_increments(series_of({1.0, std::numbers::e, std::exp(3.0)}));
    ASSERT_EQ(inc.size(), 2u);
    EXPECT_NEAR(inc[0], 1.0, 1e-15);
    EXPECT_NEAR(inc[1], 2.0, 1e-15);
}

TEST(LogIncrements, ConstantSeriesGivesZeros) {
    const auto inc = log_increments(series_of({5.0, 5.0, 5.0}));
    ASSERT_EQ(inc.size(), 2u);
    EXPECT_EQ(inc[0], 0.0);
    EXPECT_EQ(inc[1], 0.0);
}

TEST(LogIncrements, ScaleCancels) {
    Engine eng = substream(11, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = 0.1 + 10.0 * uniform01(eng), b = 0.1 + 10.0 * uniform01(eng);
        const double c = std::exp(8.0 * uniform01(eng) - 4.0);
        const auto x = log_increments(series_of({a, b}));
        const auto y = log_increments(series_of({c * a, c * b}));
        EXPECT_NEAR(x[0], y[0], 1e-14);
    }
}

TEST(LogIncrements, ShortSeriesIsInvalid) {
    const std::vector<double> one{1.0};
    EXPECT_EQ(kind_of([&] { log_increments(one); }), ErrorKind::InvalidInput);
}

TEST(EmpiricalVariance, HandValues) {
    const std::vector<double> flat{1, 1, 1}, pair{0, 2}, ramp{1, 2, 3};
    EXPECT_EQ(empirical_variance(flat), 0.0);
    EXPECT_DOUBLE_EQ(empirical_variance(pair), 2.0);
    EXPECT_DOUBLE_EQ(empirical_variance(ramp), 1.0);
    const std::vector<double> single{1.0};
    EXPECT_EQ(kind_of([&] { empirical_variance(single); }), ErrorKind::InsufficientData);
}

TEST(MomentSummary, SymmetricThreePointLaw) {
    // [-1, 0, 1] with every point doubled: identical divisor-n moments, n >= 4.
    const std::vector<double> xs{-1, -1, 0, 0, 1, 1};
    const auto m = moment_summary(xs);
    EXPECT_NEAR(m.skewness, 0.0, 1e-15);
    EXPECT_NEAR(m.excess_kurtosis, -1.5, 1e-14);
    EXPECT_NEAR(m.mean, 0.0, 1e-15);
    EXPECT_NEAR(m.variance, 0.8, 1e-15);  // 4 / 5
}

TEST(MomentSummary, Errors) {
    const std::vector<double> three{-1, 0, 1}, flat{2, 2, 2, 2, 2};
    EXPECT_EQ(kind_of([&] { moment_summary(three); }), ErrorKind::InsufficientData);
    EXPECT_EQ(kind_of([&] { moment_summary(flat); }), ErrorKind::Degenerate);
}

TEST(MomentSummary, GaussianMillionDraws) {
    Engine eng = substream(2010, 0);
    std::normal_distribution<double> normal;
    std::vector<double> xs(1'000'000);
    for (auto& x : xs) x = normal(eng);
    const auto m = moment_summary(xs);
    EXPECT_NEAR(m.skewness, 0.0, 0.01);
    EXPECT_NEAR(m.excess_kurtosis, 0.0, 0.02);
}

TEST(MomentSummary, InvariancesProperty) {
    Engine eng = substream(12, 0);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(uniform01(eng) * 200);
        std::vector<double> xs(n);
        for (auto& x : xs) x = std::exp(normal(eng));  // skewed
        const double a = 10.0 * normal(eng);
        const double b = std::exp(normal(eng));
        std::vector<double> shifted(xs), scaled(xs), affine(xs), flipped(xs), reversed(xs.rbegin(), xs.rend());
        for (std::size_t i = 0; i < n; ++i) {
            shifted[i] = xs[i] + a;
            scaled[i] = b * xs[i];
            affine[i] = a + b * xs[i];
            flipped[i] = a - b * xs[i];
        }
        const double v = empirical_variance(xs);
        EXPECT_TRUE(testutil::rel_close(empirical_variance(shifted), v, 1e-8));
        EXPECT_TRUE(testutil::rel_close(empirical_variance(scaled), b * b * v, 1e-12));

        const auto base = moment_summary(xs);
        const auto aff = moment_summary(affine);
        const auto flp = moment_summary(flipped);
        const auto rev = moment_summary(reversed);
        EXPECT_NEAR(aff.skewness, base.skewness, 1e-8 * (1 + std::abs(base.skewness)));
        EXPECT_NEAR(aff.excess_kurtosis, base.excess_kurtosis, 1e-8 * (1 + std::abs(base.excess_kurtosis)));
        EXPECT_NEAR(flp.skewness, -base.skewness, 1e-8 * (1 + std::abs(base.skewness)));
        EXPECT_NEAR(rev.mean, base.mean, 1e-12 * (1 + std::abs(base.mean)));
        EXPECT_NEAR(rev.variance, base.variance, 1e-12 * base.variance);
        EXPECT_NEAR(rev.skewness, base.skewness, 1e-10 * (1 + std::abs(base.skewness)));
        EXPECT_NEAR(rev.excess_kurtosis, base.excess_kurtosis, 1e-10 * (1 + std::abs(base.excess_kurtosis)));
    }
}
