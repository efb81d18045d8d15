#pragma once

// Stability skeleton: homogeneous-solution comparison Lambda vs e^tau on the
// sphere, the two-sided cutoff eta_eps and its log(1/eps) coefficient, and the
// fourth-order test family r^{-(n-4)/2} eta_eps.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/parallel.hpp"
#include "glab/quadrature.hpp"
#include "glab/specfun.hpp"

namespace glab {

// ---------------------------------------------------------------- cutoff

/// eta(x) = 1 on [0,1], 0 on [1+w, inf), quintic smootherstep between
/// (C^2, so eta'' is continuous for the Rellich family).
struct Bump {
    double width = 1.0;

    // 1 - S(q), S(q) = 6q^5 - 15q^4 + 10q^3 on q = (x-1)/w
    double value(double x) const {
        const double q = (x - 1.0) / width;
        if (q <= 0.0) return 1.0;
        if (q >= 1.0) return 0.0;
        return 1.0 - q * q * q * (10.0 + q * (-15.0 + 6.0 * q));
    }
    double d1(double x) const {
        const double q = (x - 1.0) / width;
        if (q <= 0.0 || q >= 1.0) return 0.0;
        return -30.0 * q * q * (1.0 - q) * (1.0 - q) / width;
    }
    double d2(double x) const {
        const double q = (x - 1.0) / width;
        if (q <= 0.0 || q >= 1.0) return 0.0;
        return -60.0 * q * (1.0 - q) * (1.0 - 2.0 * q) / (width * width);
    }
};

/// eta_eps(x) = (1 - eta(2x/eps)) eta(eps x): zero on [0, eps/2] and
/// [(1+w)/eps, inf), one on [eps (1+w)/2, 1/eps].
struct CutoffFamily {
    double epsilon;
    Bump eta{};

    CutoffFamily(double eps, double width = 1.0) : epsilon(eps), eta{width} {
        detail::require(eps > 0.0 && eps < 1.0, "CutoffFamily: epsilon must lie in (0, 1)");
        detail::require(width > 0.0 && width <= 1.0, "CutoffFamily: width must lie in (0, 1]");
    }

    double value(double x) const { return (1.0 - eta.value(2.0 * x / epsilon)) * eta.value(epsilon * x); }

    double d1(double x) const {
        const double a = 2.0 / epsilon, e = epsilon;
        return -a * eta.d1(a * x) * eta.value(e * x) + (1.0 - eta.value(a * x)) * e * eta.d1(e * x);
    }

    double d2(double x) const {
        const double a = 2.0 / epsilon, e = epsilon;
        return -a * a * eta.d2(a * x) * eta.value(e * x) - 2.0 * a * e * eta.d1(a * x) * eta.d1(e * x) +
               (1.0 - eta.value(a * x)) * e * e * eta.d2(e * x);
    }

    /// Radii where the piecewise definition changes form.
    std::vector<double> breakpoints() const {
        const double w = eta.width;
        return {0.5 * epsilon, 0.5 * epsilon * (1.0 + w), 1.0 / epsilon, (1.0 + w) / epsilon};
    }
};

namespace detail {

/// int_0^inf r^{-1} f(r) dr for f supported in [bp.front(), bp.back()],
/// integrated in x = log r panel by panel.
template <class F>
double log_measure_integral(F&& f, const std::vector<double>& bp, double rtol) {
    std::vector<double> xs;
    for (double b : bp) xs.push_back(std::log(b));
    auto g = [&](double x) { return f(std::exp(x)); };
    return quad::gk_panels(g, std::span<const double>(xs), rtol).value;
}

struct LinearFit {
    double slope;
    double intercept;
};

inline LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    require(den != 0.0, "least_squares: degenerate abscissae");
    const double slope = (n * sxy - sx * sy) / den;
    return {slope, (sy - slope * sx) / n};
}

inline void check_eps_list(const std::vector<double>& eps, double eps_max) {
    require(eps.size() >= 3, "need at least 3 epsilon values");
    for (std::size_t i = 0; i < eps.size(); ++i) {
        require(eps[i] > 0.0 && eps[i] <= eps_max, "epsilon values must lie in (0, " + std::to_string(eps_max) + "]");
        if (i > 0) require(eps[i] < eps[i - 1], "epsilon values must be strictly decreasing");
    }
}

}  // namespace detail

struct EpsSample {
    double epsilon;
    double value;
};

struct LogCoefficient {
    std::vector<EpsSample> samples;
    double slope;      // d value / d log(1/eps)
    double intercept;
};

/// I(eps) = int_0^inf r^{-1} eta_eps(r)^2 dr, fitted against log(1/eps).
inline LogCoefficient cutoff_log_coefficient(const std::vector<double>& eps_list, double width = 1.0,
                                             double eps_max = 0.2) {
    detail::check_eps_list(eps_list, eps_max);
    LogCoefficient out;
    out.samples.resize(eps_list.size());
    parallel_for(eps_list.size(), [&](std::size_t i) {
        const CutoffFamily c(eps_list[i], width);
        const double v = detail::log_measure_integral(
            [&](double r) {
                const double e = c.value(r);
                return e * e;
            },
            c.breakpoints(), 1e-12);
        out.samples[i] = {eps_list[i], v};
    });
    std::vector<double> x, y;
    for (const auto& s : out.samples) {
        x.push_back(std::log(1.0 / s.epsilon));
        y.push_back(s.value);
    }
    const auto fit = detail::least_squares(x, y);
    out.slope = fit.slope;
    out.intercept = fit.intercept;
    return out;
}

/// f_eps(t) = int_0^inf r^{-1} eta_eps(r) (eta_eps(r) - eta_eps(r t)) dr.
inline double cutoff_cross_term(double eps, double t, double width = 1.0) {
    detail::require(t > 0.0, "cutoff_cross_term: t must be > 0");
    const CutoffFamily c(eps, width);
    auto bp = c.breakpoints();
    for (double b : c.breakpoints()) bp.push_back(b / t);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return detail::log_measure_integral([&](double r) { return c.value(r) * (c.value(r) - c.value(r * t)); }, bp,
                                        1e-12);
}

// ---------------------------------------------------------------- Rellich family

struct RellichResult {
    std::vector<EpsSample> samples;  // Q(psi_eps) / |S^{n-1}|
    double slope;                    // coefficient of log(1/eps)
    double normalized_slope;         // slope / cutoff slope: Hardy-Rellich minus A_{n,2}
    int sign;
};

/// Q(psi) = int |Delta psi|^2 - 8(n-2)(n-4) int psi^2 / r^4 on psi = r^{-(n-4)/2} eta_eps,
/// per unit sphere measure. With k = (n-4)/2,
///   r^{n-1} |Delta psi|^2 = r^{-1} (-n(n-4)/4 eta + 3 r eta' + r^2 eta'')^2.
inline RellichResult rellich_family_sign(double n, const std::vector<double>& eps_list, double width = 1.0) {
    detail::require(n >= 5.0, "rellich_family_sign: need n >= 5");
    detail::check_eps_list(eps_list, 0.2);
    const double c0 = -n * (n - 4.0) / 4.0;
    const double a = 8.0 * (n - 2.0) * (n - 4.0);
    RellichResult out;
    out.samples.resize(eps_list.size());
    parallel_for(eps_list.size(), [&](std::size_t i) {
        const CutoffFamily c(eps_list[i], width);
        const double q = detail::log_measure_integral(
            [&](double r) {
                const double e = c.value(r);
                const double lap = c0 * e + 3.0 * r * c.d1(r) + r * r * c.d2(r);
                return lap * lap - a * e * e;
            },
            c.breakpoints(), 1e-12);
        out.samples[i] = {eps_list[i], q};
    });
    std::vector<double> x, y;
    for (const auto& s : out.samples) {
        x.push_back(std::log(1.0 / s.epsilon));
        y.push_back(s.value);
    }
    out.slope = detail::least_squares(x, y).slope;
    out.normalized_slope = out.slope / cutoff_log_coefficient(eps_list, width).slope;
    out.sign = out.slope > 0.0 ? 1 : (out.slope < 0.0 ? -1 : 0);
    return out;
}

// ---------------------------------------------------------------- homogeneous comparison

/// Zonal quadrature on S^{n-1}: polar angles with weights |S^{n-2}| sin^{n-2} theta dtheta.
struct SphereGrid {
    double n;
    std::vector<double> theta;
    std::vector<double> weight;
};

inline SphereGrid sphere_grid(double n, unsigned order = 64) {
    detail::require(n >= 2.0, "sphere_grid: dimension must be >= 2");
    const auto rule = quad::gauss_legendre(order, 0.0, std::numbers::pi);
    SphereGrid g{n, rule.nodes, {}};
    const double s = sphere_area(n - 1.0);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        g.weight.push_back(s * rule.weights[i] * std::pow(std::sin(rule.nodes[i]), n - 2.0));
    return g;
}

struct ComparisonReport {
    double lhs_coeff;  // Lambda_{n,s} |S^{n-1}|
    double rhs_coeff;  // int_{S^{n-1}} e^tau
    bool stable_possible;
};

/// Constant tau.
inline ComparisonReport homogeneous_comparison(double n, double s, double tau) {
    const ParamPoint p{n, s};
    const double area = sphere_area(n);
    const double lhs = hardy_constant(p) * area;
    const double rhs = std::exp(tau) * area;
    return {lhs, rhs, lhs >= rhs};
}

/// tau sampled at the nodes of `grid`.
inline ComparisonReport homogeneous_comparison(double n, double s, const SphereGrid& grid,
                                               const std::vector<double>& tau) {
    detail::require(grid.n == n, "homogeneous_comparison: grid dimension mismatch");
    detail::require(tau.size() == grid.theta.size(), "homogeneous_comparison: tau must be sampled on the grid");
    const double lhs = hardy_constant({n, s}) * sphere_area(n);
    double rhs = 0.0;
    for (std::size_t i = 0; i < tau.size(); ++i) rhs += grid.weight[i] * std::exp(tau[i]);
    return {lhs, rhs, lhs >= rhs};
}

/// tau = log A_{n,s}, the singular solution.
inline ComparisonReport singular_comparison(double n, double s) {
    return homogeneous_comparison(n, s, std::log(nonlinear_coefficient({n, s})));
}

}  // namespace glab
