#include <gtest/gtest.h>

#include <cmath>

#include "glab/constants.hpp"
#include "glab/critdim.hpp"
#include "glab/stability.hpp"

using namespace glab;

namespace {

const std::vector<double> kEps{0.02, 0.01, 0.005, 0.0025};

double rellich_gap(double n) { return n * n * (n - 4) * (n - 4) / 16.0 - 8.0 * (n - 2) * (n - 4); }

}  // namespace

TEST(Cutoff, PointwiseShape) {
    for (double eps : {0.1, 0.01}) {
        const CutoffFamily c(eps);
        for (int i = 0; i <= 200; ++i) {
            const double x = eps * std::pow(1.0 / (eps * eps), i / 200.0);  // [eps, 1/eps]
            EXPECT_DOUBLE_EQ(c.value(x), 1.0) << x;
        }
        for (int i = 0; i <= 50; ++i) {
            EXPECT_DOUBLE_EQ(c.value(0.5 * eps * i / 50.0), 0.0);
            EXPECT_DOUBLE_EQ(c.value(2.0 / eps * (1.0 + i)), 0.0);
        }
        for (int i = 0; i <= 400; ++i) {
            const double x = 0.4 * eps + i * (2.5 / eps) / 400.0;
            EXPECT_GE(c.value(x), 0.0);
            EXPECT_LE(c.value(x), 1.0);
        }
    }
}

TEST(Cutoff, DerivativesMatchDifferences) {
    const CutoffFamily c(0.05);
    for (double x : {0.03, 0.04, 0.045, 25.0, 30.0, 35.0}) {
        const double h = 1e-6 * x;
        EXPECT_NEAR(c.d1(x), (c.value(x + h) - c.value(x - h)) / (2 * h), 1e-5 * std::max(1.0, std::abs(c.d1(x))));
        EXPECT_NEAR(c.d2(x), (c.d1(x + h) - c.d1(x - h)) / (2 * h), 1e-4 * std::max(1.0, std::abs(c.d2(x))));
    }
}

TEST(Cutoff, LogCoefficient) {
    const auto r = cutoff_log_coefficient({0.1, 0.01, 0.001});
    EXPECT_NEAR(r.slope, 2.0, 0.05);
    const auto d = cutoff_log_coefficient({0.2, 0.1, 0.05});
    EXPECT_LE(std::abs((d.samples[1].value - d.samples[0].value) / (2 * std::log(2.0)) - 1.0), 0.05);
}

TEST(Cutoff, CrossTermBounded) {
    EXPECT_LE(std::abs(cutoff_cross_term(0.01, 10.0)), 3.0 * std::log(10.0));
    EXPECT_NEAR(cutoff_cross_term(0.01, 1.0), 0.0, 1e-12);
}

TEST(Cutoff, RejectsBadInput) {
    EXPECT_THROW(CutoffFamily(1.5), DomainError);
    EXPECT_THROW(cutoff_log_coefficient({0.1, 0.2, 0.05}), DomainError);
    EXPECT_THROW(cutoff_log_coefficient({0.1, 0.01}), DomainError);
    EXPECT_THROW(cutoff_log_coefficient({0.5, 0.1, 0.01}), DomainError);
}

TEST(Rellich, SignFlipBetween12And13) {
    for (int n = 5; n <= 20; ++n) {
        const auto r = rellich_family_sign(n, kEps);
        const double gap = rellich_gap(n);
        EXPECT_EQ(r.sign, gap > 0 ? 1 : -1) << "n=" << n;
        EXPECT_NEAR(r.normalized_slope, gap, 0.02 * std::abs(gap)) << "n=" << n;
    }
    EXPECT_DOUBLE_EQ(rellich_gap(12), -64.0);
    EXPECT_DOUBLE_EQ(rellich_gap(13), 63.5625);
}

TEST(Rellich, WidthInvariance) {
    const auto a = cutoff_log_coefficient(kEps, 1.0), b = cutoff_log_coefficient(kEps, 0.5);
    EXPECT_NEAR(b.slope, a.slope, 0.02 * a.slope);
    for (int n : {8, 12, 13}) {
        const double s1 = rellich_family_sign(n, kEps, 1.0).slope, s2 = rellich_family_sign(n, kEps, 0.5).slope;
        EXPECT_NEAR(s2, s1, 0.02 * std::abs(s1)) << "n=" << n;
    }
}

TEST(Homogeneous, Examples) {
    EXPECT_TRUE(singular_comparison(13, 1.5).stable_possible);
    EXPECT_FALSE(singular_comparison(10, 1.5).stable_possible);
    const auto eq = singular_comparison(10, 1);
    EXPECT_NEAR(eq.lhs_coeff, eq.rhs_coeff, 1e-10 * eq.lhs_coeff);
}

TEST(Homogeneous, RhsIsClosedForm) {
    for (double n : {6.0, 10.0, 14.0}) {
        const auto r = singular_comparison(n, 1.5);
        EXPECT_NEAR(r.rhs_coeff, nonlinear_coefficient({n, 1.5}) * sphere_area(n), 1e-12 * r.rhs_coeff);
    }
}

TEST(Homogeneous, AgreesWithCriticalDimension) {
    for (int j = 0; j < 5; ++j) {
        const double s = 1.1 + 0.2 * j;
        const double n0 = critical_dimension(s).root;
        for (int i = 0; i < 10; ++i) {
            const double n = 2 * s + 0.3 + 1.9 * i;
            if (std::abs(n - n0) < 1e-6) continue;
            EXPECT_EQ(singular_comparison(n, s).stable_possible, n >= n0) << "n=" << n << " s=" << s;
        }
    }
}

TEST(Homogeneous, SampledTau) {
    const auto g = sphere_grid(7);
    double area = 0;
    for (double w : g.weight) area += w;
    EXPECT_NEAR(area, sphere_area(7), 1e-12 * area);
    const double tau0 = std::log(nonlinear_coefficient({7, 1.5}));
    const std::vector<double> flat(g.theta.size(), tau0);
    const auto a = homogeneous_comparison(7, 1.5, g, flat), b = homogeneous_comparison(7, 1.5, tau0);
    EXPECT_NEAR(a.rhs_coeff, b.rhs_coeff, 1e-12 * b.rhs_coeff);
    // Jensen: the sphere mean of e^{cos theta} exceeds e^0.
    std::vector<double> wavy;
    for (double th : g.theta) wavy.push_back(tau0 + std::cos(th));
    EXPECT_GT(homogeneous_comparison(7, 1.5, g, wavy).rhs_coeff, b.rhs_coeff);
    EXPECT_THROW(homogeneous_comparison(8, 1.5, g, flat), DomainError);
}
