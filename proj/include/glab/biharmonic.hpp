#pragma once

// Fourth-order (s = 2) radial machinery: the singular solution, the radial
// bilaplacian residual, shooting for entire solutions of Delta^2 u = e^u,
// and the monotonicity energy E(r, 0, u).

#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/profile.hpp"
#include "glab/quadrature.hpp"
#include "glab/roots.hpp"
#include "glab/specfun.hpp"

namespace glab {

/// A_{n,2} = 8 (n-2)(n-4).
inline double singular_coefficient_local(double n) { return 8.0 * (n - 2.0) * (n - 4.0); }

/// u = -4 log r + log(8(n-2)(n-4)) with exact derivatives.
inline RadialProfile singular_profile(double n, std::vector<double> grid) {
    detail::require(n > 4.0, "singular_profile: need n > 4");
    const double logA = std::log(singular_coefficient_local(n));
    auto p = RadialProfile::from_jet(std::move(grid), [logA](double r) {
        const double q = 1.0 / r;
        return RadialJet{logA - 4.0 * std::log(r), -4.0 * q, 4.0 * q * q, -8.0 * q * q * q, 24.0 * q * q * q * q};
    });
    p.set_singular_core(singular_coefficient_local(n));
    return p;
}

/// Singular solution plus amp * exp(-((r - center)/width)^2), exact jet.
inline RadialProfile perturbed_singular_profile(double n, std::vector<double> grid, double amp, double center,
                                                double width) {
    detail::require(n > 4.0, "perturbed_singular_profile: need n > 4");
    detail::require(width > 0.0, "perturbed_singular_profile: width must be > 0");
    const double logA = std::log(singular_coefficient_local(n));
    auto p = RadialProfile::from_jet(std::move(grid), [=](double r) {
        const double q = 1.0 / r, x = (r - center) / width, g = amp * std::exp(-x * x);
        // d^k/dr^k of g = (-1)^k H_k(x) g / width^k (physicists' Hermite)
        const double h1 = 2 * x, h2 = 4 * x * x - 2, h3 = 8 * x * x * x - 12 * x, h4 = 16 * x * x * x * x - 48 * x * x + 12;
        const double w = width;
        return RadialJet{logA - 4.0 * std::log(r) + g, -4.0 * q - h1 * g / w, 4.0 * q * q + h2 * g / (w * w),
                         -8.0 * q * q * q - h3 * g / (w * w * w), 24.0 * q * q * q * q + h4 * g / (w * w * w * w)};
    });
    p.set_singular_core(singular_coefficient_local(n));
    return p;
}

/// Delta^2 u for radial u: u'''' + 2(n-1)u'''/r + (n-1)(n-3)(u''/r^2 - u'/r^3).
inline double radial_bilaplacian(const RadialJet& j, double n, double r) {
    return j.d4 + 2.0 * (n - 1.0) * j.d3 / r + (n - 1.0) * (n - 3.0) * (j.d2 / (r * r) - j.d1 / (r * r * r));
}

/// max over grid nodes of |Delta^2 u - e^u| r^4.
inline double radial_bilaplacian_residual(const RadialProfile& u, double n) {
    detail::require(n >= 2.0, "radial_bilaplacian_residual: dimension must be >= 2");
    double worst = 0.0;
    for (double r : u.grid()) {
        const RadialJet j = u.jet(r);
        const double res = std::abs(radial_bilaplacian(j, n, r) - std::exp(j.u)) * std::pow(r, 4);
        if (!std::isfinite(res)) throw ConvergenceError("radial_bilaplacian_residual: non-finite derivative");
        worst = std::max(worst, res);
    }
    return worst;
}

// ---------------------------------------------------------------- shooting

enum class ShootOutcome { entire_like, blowup, decaying, undecided };

inline const char* to_string(ShootOutcome o) {
    switch (o) {
        case ShootOutcome::entire_like: return "entire-like";
        case ShootOutcome::blowup: return "blowup";
        case ShootOutcome::decaying: return "decaying";
        case ShootOutcome::undecided: return "undecided";
    }
    return "?";
}

struct ShootResult {
    RadialProfile profile;
    ShootOutcome outcome = ShootOutcome::undecided;
    double r_star = 0.0;  // blowup radius
    double b = 0.0;
};

inline constexpr double kBlowupGuard = 1e290;
inline constexpr double kShootStart = 1e-3;

struct ShootOptions {
    int per_decade = 200;
    double rtol = 1e-12;
    double atol = 1e-14;
};

/// Integrates -Delta u = -v, Delta v = e^u (i.e. v = Delta u) from the origin
/// with u(0) = a, Delta u(0) = b, in s = log r with P = r u', W = r v'.
/// Cumulative bulk integrals are carried along as extra components.
inline ShootResult shoot_radial(double n, double a, double b, double r_max, ShootOptions opt = {}) {
    using namespace boost::numeric::odeint;
    using State = std::array<double, 6>;  // U, P, V, W, Bd, Bp
    detail::require(n >= 5.0, "shoot_radial: need n >= 5");
    detail::require(r_max >= 10.0 * kShootStart && r_max <= 1e4, "shoot_radial: r_max must lie in [1e-2, 1e4]");
    const double guard = std::log(kBlowupGuard);

    auto rhs = [n](const State& y, State& dy, double s) {
        const double r = std::exp(s), r2 = r * r;
        const double eu = std::exp(std::min(y[0], 700.0));
        dy[0] = y[1];
        dy[1] = r2 * y[2] - (n - 2.0) * y[1];
        dy[2] = y[3];
        dy[3] = r2 * eu - (n - 2.0) * y[3];
        const double rn = std::pow(r, n);
        dy[4] = 0.5 * y[2] * y[2] * rn;
        dy[5] = eu * rn;
    };

    // Series at the origin: u = a + b r^2/(2n) + e^a r^4/(8n(n+2)), v = b + e^a r^2/(2n).
    const double r0 = kShootStart, ea = std::exp(a);
    const double u0 = a + b * r0 * r0 / (2 * n) + ea * std::pow(r0, 4) / (8 * n * (n + 2));
    const double up = b * r0 / n + ea * std::pow(r0, 3) / (2 * n * (n + 2));
    const double v0 = b + ea * r0 * r0 / (2 * n), vp = ea * r0 / n;
    State y{u0, r0 * up, v0, r0 * vp, 0.5 * b * b * std::pow(r0, n) / n, ea * std::pow(r0, n) / n};

    const std::vector<double> grid = log_grid(r0, r_max, opt.per_decade);
    std::vector<double> sgrid(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) sgrid[i] = std::log(grid[i]);
    sgrid.back() = std::log(r_max);

    std::vector<State> saved;
    saved.reserve(grid.size());
    auto stepper = make_dense_output(opt.atol, opt.rtol, runge_kutta_dopri5<State>());
    stepper.initialize(y, sgrid.front(), 1e-4);
    saved.push_back(y);
    std::size_t next = 1;
    ShootResult res;
    res.b = b;
    res.outcome = ShootOutcome::undecided;
    bool finished = false;
    for (int it = 0; it < 2'000'000; ++it) {
        const auto [t0, t1] = stepper.do_step(rhs);
        (void)t0;
        const State& cur = stepper.current_state();
        bool blown = !std::isfinite(cur[0]) || cur[0] > guard;
        while (next < sgrid.size() && sgrid[next] <= t1) {
            State tmp;
            stepper.calc_state(sgrid[next], tmp);
            if (!std::isfinite(tmp[0]) || tmp[0] > guard) {
                blown = true;
                break;
            }
            saved.push_back(tmp);
            ++next;
        }
        if (blown) {
            res.outcome = ShootOutcome::blowup;
            res.r_star = std::exp(t1);
            break;
        }
        if (next >= sgrid.size()) {
            finished = true;
            break;
        }
        if (stepper.current_time_step() < 1e-13) {
            // Near a singularity u ~ -4 log(r* - r), so e^u reaches the guard
            // only at r* - r ~ 1e-72; the step size collapses first. Collapse
            // while u climbs is the singularity, otherwise undecided.
            if (cur[1] > 0.0) {
                res.outcome = ShootOutcome::blowup;
                res.r_star = std::exp(t1);
            }
            break;
        }
    }

    if (saved.size() < static_cast<std::size_t>(RadialProfile::kStencil)) {
        // Too short to carry a profile; keep the start segment for diagnostics.
        while (saved.size() < static_cast<std::size_t>(RadialProfile::kStencil)) saved.push_back(saved.back());
    }
    const std::size_t m = saved.size();
    std::vector<double> r(m), u(m), d1(m), d2(m), d3(m), d4(m), bd(m), bp(m);
    for (std::size_t i = 0; i < m; ++i) {
        const State& s = saved[i];
        const double ri = i < grid.size() ? grid[i] : grid.back();
        r[i] = ri;
        u[i] = s[0];
        const double ur = s[1] / ri, v = s[2], vr = s[3] / ri;
        const double urr = v - (n - 1.0) * ur / ri;
        const double urrr = vr - (n - 1.0) * (urr / ri - ur / (ri * ri));
        const double vrr = std::exp(std::min(s[0], 700.0)) - (n - 1.0) * vr / ri;
        d1[i] = ur;
        d2[i] = urr;
        d3[i] = urrr;
        d4[i] = vrr - (n - 1.0) * (urrr / ri - 2.0 * urr / (ri * ri) + 2.0 * ur / (ri * ri * ri));
        bd[i] = s[4];
        bp[i] = s[5];
    }
    if (res.outcome == ShootOutcome::blowup && m > 1 && r[m - 1] <= r[m - 2]) {
        // padded copies: drop them again by trimming to strictly increasing radii
        std::size_t keep = 1;
        while (keep < m && r[keep] > r[keep - 1]) ++keep;
        for (auto* v : {&r, &u, &d1, &d2, &d3, &d4, &bd, &bp}) v->resize(keep);
    }
    if (r.size() >= static_cast<std::size_t>(RadialProfile::kStencil)) {
        RadialProfile p(r, u);
        p.set_column(1, d1);
        p.set_column(2, d2);
        p.set_column(3, d3);
        p.set_column(4, d4);
        p.set_bulk(n, bd, bp);
        p.set_origin({a, b});
        res.profile = std::move(p);
    }

    if (finished) {
        // Classify on w = u + 4 log r over the last decade.
        const double r_lo = r_max / 10.0;
        const double w_end = u.back() + 4.0 * std::log(r.back());
        const auto it = std::lower_bound(r.begin(), r.end(), std::max(r_lo, r.front()));
        const std::size_t i0 = static_cast<std::size_t>(it - r.begin());
        const double w_start = u[i0] + 4.0 * std::log(r[i0]);
        res.outcome = w_end < w_start - 1.0 ? ShootOutcome::decaying : ShootOutcome::entire_like;
    }
    return res;
}

/// Bisection in b between a non-blowup b_lo and a blowup b_hi down to width
/// 1e-12; returns the shot at the non-blowup end.
inline ShootResult shoot_bisect(double n, double a, double b_lo, double b_hi, double r_max, double width = 1e-12,
                                ShootOptions opt = {}) {
    auto blows = [&](double b) { return shoot_radial(n, a, b, r_max, opt).outcome == ShootOutcome::blowup; };
    if (blows(b_lo)) throw DomainError("shoot_bisect: lower b already blows up");
    if (!blows(b_hi)) throw DomainError("shoot_bisect: upper b does not blow up");
    const auto [lo, hi] = bisect_predicate(blows, b_lo, b_hi, width);
    (void)hi;
    return shoot_radial(n, a, lo, r_max, opt);
}

// ---------------------------------------------------------------- energy

struct EnergyBreakdown {
    double bulk_dirichlet = 0;
    double bulk_potential = 0;
    double boundary_sq = 0;
    double d_dr_sq_term = 0;
    double log_term = 0;
    double radial_deriv_term = 0;
    std::array<double, 2> tangential_terms{0.0, 0.0};
    double total = 0;
};

/// Fraction of r kept free on each side for derivative stencils.
inline constexpr double kEnergyMargin = 0.02;

namespace detail {

/// int_0^r (1/2 (Delta u)^2, e^u) rho^{n-1} d rho (no sphere factor).
inline std::pair<double, double> bulk_integrals(const RadialProfile& u, double n, double r) {
    if (u.bulk_dimension()) {
        require(std::abs(*u.bulk_dimension() - n) < 1e-12, "energy_local: profile bulk data is for another dimension");
        return u.bulk_at(r);
    }
    const double r0 = u.r_min();
    double dir = 0.0, pot = 0.0;
    if (auto A = u.singular_core()) {
        require(n > 4.0, "energy_local: log-type core needs n > 4");
        dir = 8.0 * (n - 2.0) * (n - 2.0) / (n - 4.0) * std::pow(r0, n - 4.0);
        pot = *A / (n - 4.0) * std::pow(r0, n - 4.0);
    } else if (auto o = u.origin()) {
        dir = 0.5 * o->b * o->b * std::pow(r0, n) / n;
        pot = std::exp(o->a) * std::pow(r0, n) / n;
    } else {
        const RadialJet j = u.jet(r0);
        const double lap = j.d2 + (n - 1.0) * j.d1 / r0;
        dir = 0.5 * lap * lap * std::pow(r0, n) / n;
        pot = std::exp(j.u) * std::pow(r0, n) / n;
    }
    std::vector<double> br{r0};
    for (double x = 10.0 * r0; x < r; x *= 10.0) br.push_back(x);
    br.push_back(r);
    auto fd = [&](double rho) {
        const RadialJet j = u.jet(rho);
        const double lap = j.d2 + (n - 1.0) * j.d1 / rho;
        return 0.5 * lap * lap * std::pow(rho, n - 1.0);
    };
    auto fp = [&](double rho) { return std::exp(u.value(rho)) * std::pow(rho, n - 1.0); };
    dir += quad::gk_panels(fd, std::span<const double>(br), 1e-12).value;
    pot += quad::gk_panels(fp, std::span<const double>(br), 1e-12).value;
    return {dir, pot};
}

}  // namespace detail

/// E(r, 0, u) for radial u, sphere integrals reduced to point values.
inline EnergyBreakdown energy_local(const RadialProfile& u, double n, double r) {
    detail::require(n >= 5.0, "energy_local: need n >= 5");
    if (!(r * (1.0 - kEnergyMargin) >= u.r_min() && r * (1.0 + kEnergyMargin) <= u.r_max())) {
        std::ostringstream os;
        os << "energy_local: r=" << r << " too close to the grid ends [" << u.r_min() << ", " << u.r_max() << "]";
        throw DomainError(os.str());
    }
    const double w = sphere_area(n);
    const RadialJet j = u.jet(r);
    const double g = j.d1 + 4.0 / r;
    const auto [dir, pot] = detail::bulk_integrals(u, n, r);
    const double scale = std::pow(r, 4.0 - n);

    EnergyBreakdown e;
    e.bulk_dirichlet = scale * w * dir;
    e.bulk_potential = -scale * w * pot;
    e.boundary_sq = -2.0 * w * r * r * g * g;
    e.d_dr_sq_term = w * r * r * r * g * (j.d2 - 4.0 / (r * r));
    e.log_term = 8.0 * (n - 2.0) * w * (j.u + 4.0 * std::log(r));
    e.radial_deriv_term = 4.0 * (n - 2.0) * w * r * g;
    e.total = e.bulk_dirichlet + e.bulk_potential + e.boundary_sq + e.d_dr_sq_term + e.log_term + e.radial_deriv_term +
              e.tangential_terms[0] + e.tangential_terms[1];
    return e;
}

/// The lower bound 2(n-3) r^{2-n} int_{dB_r} (u_r + 4/r)^2 for dE/dr.
inline double energy_local_bound(const RadialProfile& u, double n, double r) {
    const double g = u.derivative(r, 1) + 4.0 / r;
    return 2.0 * (n - 3.0) * sphere_area(n) * r * g * g;
}

/// Centered difference of E at r with step h r.
inline double energy_local_slope(const RadialProfile& u, double n, double r, double h = 1e-3) {
    return (energy_local(u, n, r * (1.0 + h)).total - energy_local(u, n, r * (1.0 - h)).total) / (2.0 * h * r);
}

}  // namespace glab
