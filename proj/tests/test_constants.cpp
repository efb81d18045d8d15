#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "glab/constants.hpp"

using namespace glab;
using boost::math::tgamma;

namespace {

// Direct Gamma evaluations, independent of the library's log-space assembly.
double hardy_oracle(double n, double s) {
    const double q = tgamma((n + 2 * s) / 4) / tgamma((n - 2 * s) / 4);
    return std::pow(4.0, s) * q * q;
}

double coeff_oracle(double n, double s) {
    return std::pow(4.0, s) * tgamma(n / 2) * tgamma(1 + s) / tgamma((n - 2 * s) / 2);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(HardyConstant, Values) {
    EXPECT_NEAR(hardy_constant({10, 1}), 16.0, 16.0 * 1e-13);
    EXPECT_NEAR(hardy_constant({12, 2}), 576.0, 576.0 * 1e-13);
    EXPECT_LE(rel(hardy_constant({10, 1.5}), hardy_oracle(10, 1.5)), 1e-13);
}

TEST(HardyConstant, MatchesOracleOnGrid) {
    for (double n : {3.5, 5.0, 7.0, 10.0, 16.0, 30.0})
        for (double s : {0.25, 0.5, 1.0, 1.3, 1.5, 1.7}) {
            if (!(n > 2 * s)) continue;
            EXPECT_LE(rel(hardy_constant({n, s}), hardy_oracle(n, s)), 1e-12) << n << "," << s;
            EXPECT_LE(rel(nonlinear_coefficient({n, s}), coeff_oracle(n, s)), 1e-12) << n << "," << s;
        }
}

TEST(NonlinearCoefficient, Values) {
    EXPECT_NEAR(nonlinear_coefficient({10, 1}), 16.0, 16.0 * 1e-13);
    EXPECT_NEAR(nonlinear_coefficient({12, 2}), 640.0, 640.0 * 1e-13);
    EXPECT_NEAR(nonlinear_coefficient({3, 0.5}), std::numbers::pi / 2, 1e-13);
}

TEST(Constants, FourthOrderIdentities) {
    for (int n = 5; n <= 16; ++n) {
        const double L = n * n * (n - 4.0) * (n - 4.0) / 16.0, A = 8.0 * (n - 2.0) * (n - 4.0);
        EXPECT_LE(rel(hardy_constant({double(n), 2.0}), L), 1e-12) << n;
        EXPECT_LE(rel(nonlinear_coefficient({double(n), 2.0}), A), 1e-12) << n;
    }
}

TEST(Constants, SecondOrderIdentities) {
    for (int n = 3; n <= 16; ++n) {
        EXPECT_LE(rel(hardy_constant({double(n), 1.0}), (n - 2.0) * (n - 2.0) / 4.0), 1e-12) << n;
        EXPECT_LE(rel(nonlinear_coefficient({double(n), 1.0}), 2.0 * (n - 2.0)), 1e-12) << n;
    }
}

TEST(Constants, ContinuousInS) {
    for (double s = 0.3; s < 1.9; s += 0.1) {
        const double h = 1e-7;
        EXPECT_LE(rel(hardy_constant({10, s + h}), hardy_constant({10, s})), 1e-5) << s;
        EXPECT_LE(rel(nonlinear_coefficient({10, s + h}), nonlinear_coefficient({10, s})), 1e-5) << s;
    }
}

TEST(Constants, ParameterValidation) {
    EXPECT_THROW(hardy_constant({3, 1.5}), DomainError);
    EXPECT_THROW(hardy_constant({10, 2.5}), DomainError);
    EXPECT_THROW(hardy_constant({10, 0.0}), DomainError);
    EXPECT_THROW(nonlinear_coefficient({4, 2}), DomainError);
    EXPECT_NO_THROW(hardy_constant({4.0001, 2}));
}

TEST(Norms, PoissonAndNeumann) {
    EXPECT_NEAR(poisson_norm(2, 0.5), 1.0 / (2.0 * std::numbers::pi), 1e-15);
    EXPECT_NEAR(neumann_norm(1.0), 1.0, 1e-14);
    EXPECT_NEAR(poisson_norm(1, 0.5), 1.0 / std::numbers::pi, 1e-15);  // Cauchy kernel
    EXPECT_NEAR(extension_source_norm(1.5), 2.0, 1e-13);
}

TEST(Norms, FracLapNorm) {
    // C_{1,1/2} = 1/pi
    EXPECT_NEAR(frac_lap_norm(1, 0.5), 1.0 / std::numbers::pi, 1e-14);
    for (double t : {0.1, 0.4, 0.8})
        EXPECT_LE(rel(hypersingular_norm(7, t), frac_lap_norm(7, t)), 1e-13) << t;
    EXPECT_NEAR(hypersingular_norm(7, 1.0), 0.0, 1e-15);
    EXPECT_LT(hypersingular_norm(7, 1.5), 0.0);
    EXPECT_THROW(frac_lap_norm(3, 1.0), DomainError);
}

TEST(ConstantBundle, FieldsByRange) {
    const auto a = constant_bundle({10, 1.5});
    ASSERT_TRUE(a.frac_lap_norm.has_value());
    EXPECT_NEAR(*a.frac_lap_norm, frac_lap_norm(10, 0.5), 1e-15);
    EXPECT_DOUBLE_EQ(a.b, 0.0);
    const auto b = constant_bundle({12, 2});
    EXPECT_FALSE(b.frac_lap_norm.has_value());
    EXPECT_FALSE(b.neumann_norm.has_value());
    EXPECT_FALSE(constant_bundle({10, 1}).frac_lap_norm.has_value());
}
