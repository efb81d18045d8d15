#include <gtest/gtest.h>

#include <cmath>

#include "glab/biharmonic.hpp"

using namespace glab;

namespace {

RadialProfile zero_profile(std::vector<double> grid) {
    return RadialProfile::from_jet(std::move(grid), [](double) { return RadialJet{}; });
}

// Hand-evaluated E(r) for u = 0: the bulk potential is -r^4/n per unit sphere,
// u_r + 4/r = 4/r, u_rr - 4/r^2 = -4/r^2 and u + 4 log r = 4 log r.
double zero_energy(double n, double r) {
    const double w = sphere_area(n);
    return w * (-std::pow(r, 4) / n - 32.0 - 16.0 + 32.0 * (n - 2.0) * std::log(r) + 16.0 * (n - 2.0));
}

const ShootResult& entire13() {
    static const ShootResult r = shoot_bisect(13.0, 0.0, -100.0, 1.0, 1e3);
    return r;
}

const ShootResult& entire5() {
    static const ShootResult r = shoot_bisect(5.0, 0.0, -100.0, 1.0, 1e3);
    return r;
}

}  // namespace

TEST(SingularProfile, Values) {
    const auto u12 = singular_profile(12, log_grid(0.1, 10));
    EXPECT_NEAR(u12.value(1.0), std::log(640.0), 1e-14);
    EXPECT_NEAR(u12.value(1.0), 6.46147, 1e-5);
    const auto u5 = singular_profile(5, log_grid(0.1, 10));
    EXPECT_NEAR(u5.value(std::exp(1.0)), -4.0 + std::log(24.0), 1e-13);
    for (double r : {0.2, 1.0, 4.0}) EXPECT_NEAR(u5.value(2 * r) - u5.value(r), -4.0 * std::log(2.0), 1e-13);
    EXPECT_THROW(singular_profile(4, log_grid(0.1, 10)), DomainError);
}

TEST(Residual, SingularSolutions) {
    EXPECT_LE(radial_bilaplacian_residual(singular_profile(12, log_grid(1e-3, 10)), 12), 1e-6);
    EXPECT_LE(radial_bilaplacian_residual(singular_profile(5, log_grid(1e-3, 10)), 5), 1e-6);
}

TEST(Residual, ZeroProfileIsNotASolution) {
    const auto grid = log_grid(1e-2, 3.0);
    EXPECT_NEAR(radial_bilaplacian_residual(zero_profile(grid), 7), std::pow(3.0, 4), 1e-12);
}

TEST(Shooting, Outcomes) {
    EXPECT_EQ(shoot_radial(13, 0, 1, 1e3).outcome, ShootOutcome::blowup);
    const auto& e = entire13();
    EXPECT_EQ(e.outcome, ShootOutcome::entire_like);
    // u + 4 log r stays bounded once the solution has left the origin.
    double lo = 1e300, hi = -1e300;
    for (double r = 10.0; r <= 100.0; r *= 1.2) {
        const double w = e.profile.value(r) + 4.0 * std::log(r);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    EXPECT_LT(hi - lo, 1.0);
    const auto d = shoot_radial(5, 0, -100, 1e3).outcome;
    EXPECT_TRUE(d == ShootOutcome::decaying || d == ShootOutcome::undecided) << to_string(d);
    EXPECT_THROW(shoot_radial(4, 0, 0, 10), DomainError);
    EXPECT_THROW(shoot_bisect(13, 0, 1, 2, 1e3), DomainError);
}

TEST(Shooting, ProfileSolvesEquationNearOrigin) {
    const auto shot = shoot_radial(13, 0, -2, 10);
    const auto& g = shot.profile.grid();
    double worst = 0.0;
    for (double r : g) {
        if (r < 5e-3 || r > 5.0) continue;
        const auto j = shot.profile.jet(r);
        worst = std::max(worst, std::abs(radial_bilaplacian(j, 13, r) - std::exp(j.u)) * std::pow(r, 4));
    }
    EXPECT_LE(worst, 1e-5);
}

TEST(Rescale, SingularIsInvariant) {
    const auto u = singular_profile(9, log_grid(1e-2, 100));
    const auto v = rescale_profile(u, 2.0);
    for (double r : {0.1, 1.0, 7.0}) {
        EXPECT_NEAR(v.value(r), u.value(r), 1e-12);
        EXPECT_NEAR(v.derivative(r, 2), u.derivative(r, 2), 1e-10 * std::abs(u.derivative(r, 2)));
    }
    const auto id = rescale_profile(u, 1.0);
    EXPECT_EQ(id.grid(), u.grid());
    EXPECT_EQ(id.values(), u.values());
    EXPECT_THROW(rescale_profile(u, 0.0), DomainError);
}

TEST(Rescale, ResidualMovesWithRadius) {
    const auto shot = shoot_radial(13, 0, -2, 10);
    for (double lambda : {0.5, 2.0}) {
        const auto v = rescale_profile(shot.profile, lambda);
        for (double r : {0.05, 0.5, 3.0}) {
            const auto a = shot.profile.jet(r), b = v.jet(r / lambda);
            const double ra = (radial_bilaplacian(a, 13, r) - std::exp(a.u)) * std::pow(r, 4);
            const double rb = (radial_bilaplacian(b, 13, r / lambda) - std::exp(b.u)) * std::pow(r / lambda, 4);
            EXPECT_NEAR(rb, ra, 1e-9 * std::max(1.0, std::abs(ra)));
        }
    }
}

TEST(EnergyLocal, PartsAddUp) {
    const auto u = perturbed_singular_profile(12, log_grid(1e-3, 1e3, 100), 0.1, 2.0, 0.5);
    for (double r : {0.5, 1.0, 2.0, 3.0}) {
        const auto e = energy_local(u, 12, r);
        const double sum = e.bulk_dirichlet + e.bulk_potential + e.boundary_sq + e.d_dr_sq_term + e.log_term +
                           e.radial_deriv_term + e.tangential_terms[0] + e.tangential_terms[1];
        EXPECT_NEAR(e.total, sum, 1e-12 * std::max(1.0, std::abs(sum)));
        EXPECT_EQ(e.tangential_terms[0], 0.0);
        EXPECT_EQ(e.tangential_terms[1], 0.0);
    }
}

TEST(EnergyLocal, ZeroProfileClosedForm) {
    const auto u = zero_profile(log_grid(1e-3, 10));
    for (double r : {0.5, 1.0, 2.0, 5.0})
        EXPECT_NEAR(energy_local(u, 5, r).total, zero_energy(5, r), 1e-9 * std::abs(zero_energy(5, r))) << r;
    EXPECT_NEAR(energy_local(u, 9, 2.0).total, zero_energy(9, 2.0), 1e-9 * std::abs(zero_energy(9, 2.0)));
}

TEST(EnergyLocal, ConstantOnSingularSolution) {
    const auto grid = log_grid(0.5, 8.0);
    for (int n = 5; n <= 13; ++n) {
        const auto u = singular_profile(n, grid);
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i <= 20; ++i) {
            const double e = energy_local(u, n, std::pow(4.0, i / 20.0)).total;
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        EXPECT_LE((hi - lo) / std::max(std::abs(lo), std::abs(hi)), 1e-3) << "n=" << n;
    }
    const auto u12 = singular_profile(12, grid);
    EXPECT_NEAR(energy_local(u12, 12, 3.0).total, energy_local(u12, 12, 1.0).total,
                1e-3 * std::abs(energy_local(u12, 12, 1.0).total));
}

TEST(EnergyLocal, ScaleIdentity) {
    const auto& u = entire13().profile;
    for (double lambda : {0.5, 2.0}) {
        const auto v = rescale_profile(u, lambda);
        for (double r : {0.5, 1.0, 4.0}) {
            const double a = energy_local(u, 13, lambda * r).total, b = energy_local(v, 13, r).total;
            EXPECT_NEAR(b, a, 1e-6 * std::abs(a)) << "lambda=" << lambda << " r=" << r;
        }
    }
}

TEST(EnergyLocal, MonotoneOnEntireProfiles) {
    for (const auto* shot : {&entire5(), &entire13()}) {
        const double n = shot == &entire5() ? 5.0 : 13.0;
        EXPECT_EQ(shot->outcome, ShootOutcome::entire_like) << "n=" << n;
        for (int i = 0; i < 10; ++i) {
            const double r = 0.5 * std::pow(20.0, i / 9.0);
            const double slope = energy_local_slope(shot->profile, n, r);
            EXPECT_GE(slope, -1e-5) << "n=" << n << " r=" << r;
            EXPECT_GE(slope - energy_local_bound(shot->profile, n, r), -1e-4) << "n=" << n << " r=" << r;
        }
    }
}

TEST(EnergyLocal, MarginViolation) {
    const auto u = singular_profile(8, log_grid(1.0, 4.0));
    EXPECT_THROW(energy_local(u, 8, 1.0), DomainError);
    EXPECT_THROW(energy_local(u, 8, 4.0), DomainError);
    EXPECT_THROW(energy_local(u, 4, 2.0), DomainError);
}
