#pragma once

// Thin layer over Boost.Math quadrature: adaptive Gauss-Kronrod on finite
// intervals, panel splitting at caller-supplied breakpoints, and fixed
// Gauss-Legendre rules for angular grids.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace glab::quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;

    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
};

inline constexpr unsigned kDefaultDepth = 15;

/// Adaptive 31-point Gauss-Kronrod on [a, b].
template <class F>
Estimate gk(F&& f, double a, double b, double rtol = 1e-10, unsigned depth = kDefaultDepth) {
    if (a == b) return {};
    double err = 0.0;
    const double v =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, depth, rtol, &err);
    return {v, err};
}

/// Sum of gk over consecutive panels [x0,x1], [x1,x2], ...
template <class F>
Estimate gk_panels(F&& f, std::span<const double> breaks, double rtol = 1e-10, unsigned depth = kDefaultDepth) {
    Estimate total;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) total += gk(f, breaks[i], breaks[i + 1], rtol, depth);
    return total;
}

template <class F>
Estimate gk_panels(F&& f, std::initializer_list<double> breaks, double rtol = 1e-10, unsigned depth = kDefaultDepth) {
    const std::vector<double> v(breaks);
    return gk_panels(f, std::span<const double>(v), rtol, depth);
}

/// Breakpoints a, a+d, a+2d, a+4d, ... < b, b: panels grow geometrically away
/// from a feature of width ~d sitting at a.
inline std::vector<double> geometric_breaks(double a, double b, double d) {
    std::vector<double> out{a};
    if (d > 0.0)
        for (double step = d; a + step < b; step *= 2.0) out.push_back(a + step);
    out.push_back(b);
    return out;
}

/// Tanh-sinh on [a, b]; tolerant of integrable endpoint singularities.
template <class F>
Estimate tanh_sinh(F&& f, double a, double b, double rtol = 1e-10) {
    if (a == b) return {};
    static thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    double err = 0.0;
    const double v = integrator.integrate(f, a, b, rtol, &err);
    return {v, err};
}

/// Gauss-Legendre nodes and weights on [a, b] of (runtime) order 8, 16, 32 or 64.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

template <unsigned N>
Rule make_rule(double a, double b) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Rule r;
    // Boost stores the non-negative half of the symmetric rule.
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            r.nodes.push_back(mid);
            r.weights.push_back(half * w[i]);
            continue;
        }
        r.nodes.push_back(mid - half * x[i]);
        r.weights.push_back(half * w[i]);
        r.nodes.push_back(mid + half * x[i]);
        r.weights.push_back(half * w[i]);
    }
    std::vector<std::size_t> idx(r.nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return r.nodes[i] < r.nodes[j]; });
    Rule sorted;
    for (auto i : idx) {
        sorted.nodes.push_back(r.nodes[i]);
        sorted.weights.push_back(r.weights[i]);
    }
    return sorted;
}

}  // namespace detail

inline Rule gauss_legendre(unsigned order, double a, double b) {
    switch (order) {
        case 8: return detail::make_rule<8>(a, b);
        case 16: return detail::make_rule<16>(a, b);
        case 32: return detail::make_rule<32>(a, b);
        case 64: return detail::make_rule<64>(a, b);
        default: break;
    }
    return detail::make_rule<32>(a, b);
}

}  // namespace glab::quad
