#pragma once

// Radial fractional Laplacian (0 < t < 1) by principal-value quadrature, the
// composition route to orders in (1, 2), and the double-integral
// representation of the Hardy constant.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>
#include <vector>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/parallel.hpp"
#include "glab/quadrature.hpp"
#include "glab/radial_function.hpp"
#include "glab/specfun.hpp"

namespace glab {

namespace detail {

inline void check_quadrature(const quad::Estimate& e, double rtol, const char* where) {
    if (!std::isfinite(e.value)) throw ConvergenceError(std::string(where) + ": non-finite quadrature value");
    if (e.error > std::max(rtol * std::abs(e.value), 1e-13)) {
        std::ostringstream os;
        os << where << ": error estimate " << e.error << " above tolerance for value " << e.value;
        throw ConvergenceError(os.str());
    }
}

}  // namespace detail

/// Splitting radius and far cutoff relative to the evaluation radius.
inline constexpr double kFracLapSplit = 0.5;
inline constexpr double kFracLapFar = 1e3;
inline constexpr double kFracLapInner = 0.02;

/// C_{n,t} p.v. int (u(x) - u(z)) |x-z|^{-n-2t} dz at |x| = r.
///
/// In h = z - x coordinates, h = rho * omega, the angle theta is measured
/// from x. For rho < r/2 the second-order Taylor polynomial of u is
/// subtracted inside the angular integral and its (purely quadratic)
/// spherical mean added back in closed form. Beyond 1e3 r the shell
/// integral is closed using the decay tag, with u(z) ~ u(|h|).
inline double radial_frac_lap(const RadialFunction& u, double n, double t, double r, double rtol = 1e-5) {
    detail::require(n >= 2.0, "radial_frac_lap: dimension must be >= 2");
    detail::require(t > 0.0 && t < 1.0, "radial_frac_lap: order t must lie in (0, 1)");
    detail::require(r > 0.0, "radial_frac_lap: evaluation radius must be > 0");
    detail::require(rtol > 0.0, "radial_frac_lap: rtol must be > 0");

    const double u0 = u(r), u1 = u.first(r), u2 = u.second(r);
    const double s_sub = sphere_area(n - 1.0);  // |S^{n-2}|
    const double s_full = sphere_area(n);       // |S^{n-1}|
    const double delta = kFracLapSplit * r, r_cut = kFracLapFar * r;
    const double inner_tol = std::max(rtol * 0.1, 1e-12);

    auto shell = [&](double rho) {
        const bool taylor = rho < delta;
        auto f = [&](double th) {
            const double c = std::cos(th), sn = std::sin(th);
            const double z = std::sqrt(std::max(r * r + rho * rho + 2.0 * r * rho * c, 0.0));
            double d = u0 - u(z);
            if (taylor) d += u1 * rho * c + 0.5 * rho * rho * (u2 * c * c + (u1 / r) * sn * sn);
            return d * std::pow(sn, n - 2.0);
        };
        // Near rho = r the field point passes the origin at theta = pi.
        const double gap = std::abs(rho - r) / r;
        double val;
        if (gap < 0.5) {
            const auto br = quad::geometric_breaks(0.0, std::numbers::pi, std::max(gap, 1e-8));
            std::vector<double> rev(br.size());
            for (std::size_t i = 0; i < br.size(); ++i) rev[br.size() - 1 - i] = std::numbers::pi - br[i];
            val = quad::gk_panels(f, std::span<const double>(rev), inner_tol).value;
        } else {
            val = quad::gk(f, 0.0, std::numbers::pi, inner_tol).value;
        }
        return s_sub * val * std::pow(rho, -1.0 - 2.0 * t);
    };

    // After the quadratic subtraction the shell mean is ~ c rho^4 (the cubic
    // part is odd in cos theta). Below rho_min that form is used directly,
    // since the subtracted difference is dominated by rounding there.
    const double rho_min = kFracLapInner * r;
    const double c4 = shell(rho_min) / std::pow(rho_min, 3.0 - 2.0 * t);

    std::vector<double> breaks{rho_min, delta};
    for (double x = r; x < r_cut; x *= 2.0) breaks.push_back(x);
    breaks.push_back(r_cut);

    std::vector<quad::Estimate> panel(breaks.size() - 1);
    parallel_for(panel.size(), [&](std::size_t i) { panel[i] = quad::gk(shell, breaks[i], breaks[i + 1], inner_tol); });
    quad::Estimate total;
    for (const auto& p : panel) total += p;
    total.value += c4 * std::pow(rho_min, 4.0 - 2.0 * t) / (4.0 - 2.0 * t);

    // Spherical mean of the subtracted quadratic: (rho^2 / 2n) Delta u.
    const double lap = u2 + (n - 1.0) * u1 / r;
    total.value -= lap / (2.0 * n) * s_full * std::pow(delta, 2.0 - 2.0 * t) / (2.0 - 2.0 * t);

    const double rc_pow = std::pow(r_cut, -2.0 * t);
    double tail = 0.0;
    if (auto* l = std::get_if<LogDecay>(&u.decay)) {
        tail = rc_pow * ((u0 - u(r_cut)) / (2.0 * t) - l->slope / (4.0 * t * t));
    } else if (auto* p = std::get_if<PowerDecay>(&u.decay)) {
        tail = u0 * rc_pow / (2.0 * t) - u(r_cut) * rc_pow / (2.0 * t + p->p);
    } else {
        const double R = std::get<CompactSupport>(u.decay).radius;
        detail::require(R < r_cut - r, "radial_frac_lap: support extends past the far cutoff");
        tail = u0 * rc_pow / (2.0 * t);
    }
    total.value += s_full * tail;

    const double cn = frac_lap_norm(n, t);
    const quad::Estimate scaled{cn * total.value, cn * total.error};
    detail::check_quadrature(scaled, rtol, "radial_frac_lap");
    return scaled.value;
}

/// (-Delta)^s log(1/r^{2s}) at r for s in (1,2), through (-Delta) o (-Delta)^{s-1}:
/// the nonlocal factor is computed numerically on log(1/r^{2(s-1)}), the
/// Laplacian of the resulting power c r^{-2t} applied exactly.
inline double compose_with_laplacian(double n, double s, double r, double rtol = 1e-5) {
    detail::require(s > 1.0 && s < 2.0, "compose_with_laplacian: s must lie in (1, 2)");
    ParamPoint{n, s}.validate();
    const double t = s - 1.0;
    const double c = std::pow(r, 2.0 * t) * radial_frac_lap(log_family(t), n, t, r, rtol) * (s / t);
    return c * 2.0 * t * (n - 2.0 * t - 2.0) * std::pow(r, -2.0 * t - 2.0);
}

/// Angular kernel K(t) = |S^{n-2}| int_0^pi ((1-t)^2 + 4t sin^2(phi/2))^{-m} sin^{n-2}(phi) dphi,
/// i.e. the sphere integral of |t theta - omega|^{-2m}.
inline double fall_angular_kernel(double n, double m, double tt, double rtol) {
    const double d = std::abs(1.0 - tt);
    auto f = [&](double phi) {
        const double sh = std::sin(0.5 * phi);
        return std::pow(d * d + 4.0 * tt * sh * sh, -m) * std::pow(std::sin(phi), n - 2.0);
    };
    const auto br = quad::geometric_breaks(0.0, std::numbers::pi, std::max(d, 1e-12));
    return sphere_area(n - 1.0) * quad::gk_panels(f, std::span<const double>(br), rtol).value;
}

inline constexpr double kFallLogMin = 1e-3;
inline constexpr double kFallLogMax = 60.0;

/// Lambda_{n,s} from C_{n,s} int_0^inf int_{S^{n-1}} (1 - t^{-(n-2s)/2}) t^{n-1} |t theta - omega|^{-n-2s}.
///
/// With t = e^{-l} and the t <-> 1/t symmetrization the integrand becomes
/// 2 (cosh(a l) - 1) K~(l), a = (n-2s)/2, whose only singular part near l = 0
/// is a^2 k0 l^{1-2s}. That term is subtracted and restored through its
/// finite part; C_{n,s} is continued analytically, which is what makes the
/// formula meaningful for s >= 1.
inline double fall_hardy_integral(double n, double s, double rtol = 1e-6) {
    detail::require(s > 0.0 && s < 2.0, "fall_hardy_integral: s must lie in (0, 2)");
    ParamPoint{n, s}.validate();
    const double m = 0.5 * (n + 2.0 * s), a = 0.5 * (n - 2.0 * s);
    // The subtraction near l = kFallLogMin cancels ~6 digits, so the angular
    // kernel is held to near machine accuracy and the outer rule to rtol.
    constexpr double ktol = 1e-12;
    constexpr unsigned kOuterDepth = 8;

    const double h1 = std::exp(log_gamma(n / 2.0) + log_gamma(1.0 + 2.0 * s) - log_gamma(n / 2.0 + s) -
                               log_gamma(1.0 + s));
    const double k0 = sphere_area(n) * std::pow(2.0, -1.0 - 2.0 * s) * h1;

    // 2 (cosh(a l) - 1) e^{-m l} K(e^{-l})
    auto sym = [&](double l) {
        const double sh = std::sinh(0.5 * a * l);
        return 4.0 * sh * sh * std::exp(-m * l) * fall_angular_kernel(n, m, std::exp(-l), ktol);
    };
    auto residual = [&](double l) { return sym(l) - a * a * k0 * std::pow(l, 1.0 - 2.0 * s); };

    quad::Estimate reg = quad::gk_panels(residual, {kFallLogMin, 1e-2, 1e-1, 1.0}, rtol, kOuterDepth);
    // Below kFallLogMin the residual is ~ c l^{3-2s}; cancellation ruins direct evaluation.
    const double c = residual(kFallLogMin) / std::pow(kFallLogMin, 3.0 - 2.0 * s);
    reg.value += c * std::pow(kFallLogMin, 4.0 - 2.0 * s) / (4.0 - 2.0 * s);

    const quad::Estimate far = quad::gk_panels(sym, {1.0, 4.0, 15.0, kFallLogMax}, rtol, kOuterDepth);

    const double value = hypersingular_norm(n, s) * (reg.value + far.value) + hypersingular_pole_factor(n, s) * a * a * k0;
    if (!std::isfinite(value)) throw ConvergenceError("fall_hardy_integral: non-finite result");
    return value;
}

}  // namespace glab
