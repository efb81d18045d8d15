#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "glab/specfun.hpp"

using namespace glab;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

double oracle_lgamma(double x) { return static_cast<double>(boost::multiprecision::lgamma(Big(x))); }

}  // namespace

TEST(LogGamma, KnownValues) {
    EXPECT_NEAR(log_gamma(1.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(2.0), 0.0, 1e-15);
    EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-14);
    EXPECT_NEAR(log_gamma(5.0), std::log(24.0), 1e-14);
}

TEST(LogGamma, MatchesHighPrecisionOracle) {
    // 400 log-spaced points on [1e-3, 1e4]; error relative to max(1, |ln Gamma|).
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double x = 1e-3 * std::pow(1e7, i / 400.0);
        const double ref = oracle_lgamma(x);
        worst = std::max(worst, std::abs(log_gamma(x) - ref) / std::max(1.0, std::abs(ref)));
    }
    EXPECT_LE(worst, 1e-13);
}

TEST(LogGamma, SwitchPointsAreContinuous) {
    for (double x : {0.5, 7.0, 20.0}) {
        for (double d : {-1e-9, 1e-9}) {
            const double ref = oracle_lgamma(x + d);
            EXPECT_NEAR(log_gamma(x + d), ref, 1e-13 * std::max(1.0, std::abs(ref))) << "x=" << x + d;
        }
    }
}

TEST(LogGamma, Recurrence) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(1e-2, 100.0);
    for (int i = 0; i < 200; ++i) {
        const double x = dist(rng);
        const double lhs = log_gamma(x + 1.0);
        EXPECT_NEAR(lhs, log_gamma(x) + std::log(x), 1e-12 * std::max(1.0, std::abs(lhs))) << "x=" << x;
    }
}

TEST(LogGamma, Reflection) {
    for (double x : {0.05, 0.2, 0.33, 0.5, 0.71, 0.95}) {
        const double lhs = log_gamma(x) + log_gamma(1.0 - x);
        EXPECT_NEAR(lhs, std::log(std::numbers::pi / std::sin(std::numbers::pi * x)), 1e-13) << "x=" << x;
    }
}

TEST(LogGamma, IncreasingBeyondMinimum) {
    // Gamma has its minimum near 1.4616.
    double prev = log_gamma(1.47);
    for (double x = 1.5; x < 200.0; x *= 1.05) {
        const double v = log_gamma(x);
        EXPECT_GT(v, prev) << "x=" << x;
        prev = v;
    }
}

TEST(GammaRatio, Values) {
    EXPECT_NEAR(gamma_ratio(5.0, 4.0), 4.0, 1e-13);
    // Gamma(171.5) alone overflows double; the ratio does not.
    EXPECT_NEAR(gamma_ratio(171.5, 170.5), 170.5, 170.5 * 1e-12);
    EXPECT_NEAR(gamma_ratio(0.5, 1.5), 2.0, 1e-13);
}

TEST(GammaFn, SmallIntegers) {
    double f = 1.0;
    for (int k = 1; k <= 15; ++k) {
        EXPECT_NEAR(gamma_fn(double(k)), f, f * 1e-13) << "k=" << k;
        f *= k;
    }
}

TEST(PositiveReal, RejectsNonPositive) {
    EXPECT_THROW(log_gamma(0.0), DomainError);
    EXPECT_THROW(log_gamma(-1.5), DomainError);
    EXPECT_THROW(gamma_ratio(1.0, -2.0), DomainError);
    EXPECT_THROW(log_gamma(std::nan("")), DomainError);
}

TEST(SphereArea, LowDimensions) {
    EXPECT_NEAR(sphere_area(1.0), 2.0, 1e-14);
    EXPECT_NEAR(sphere_area(2.0), 2.0 * std::numbers::pi, 1e-13);
    EXPECT_NEAR(sphere_area(3.0), 4.0 * std::numbers::pi, 1e-13);
    EXPECT_NEAR(sphere_area(4.0), 2.0 * std::numbers::pi * std::numbers::pi, 1e-12);
}
