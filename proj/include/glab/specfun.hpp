#pragma once

// Real log-Gamma and Gamma ratios. Every constant in the library is assembled
// from these in log space.

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "glab/errors.hpp"

namespace glab {

/// Strictly positive real; the argument type of the Gamma routines.
class PositiveReal {
public:
    constexpr PositiveReal(double v) : value_(v) {  // NOLINT: implicit on purpose
        if (!(v > 0.0)) throw DomainError("PositiveReal: value must be > 0, got " + std::to_string(v));
    }
    constexpr double value() const noexcept { return value_; }
    constexpr operator double() const noexcept { return value_; }

private:
    double value_;
};

namespace detail {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoef = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// ln Gamma(x) for x >= 0.5.
inline double log_gamma_lanczos(double x) {
    const double z = x - 1.0;
    double sum = kLanczosCoef[0];
    for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) sum += kLanczosCoef[i] / (z + static_cast<double>(i));
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

// Stirling series with Bernoulli terms through B_14; truncation < 1e-17 at x = 20.
inline double log_gamma_stirling(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    const double series =
        inv * (1.0 / 12.0 +
               inv2 * (-1.0 / 360.0 +
                       inv2 * (1.0 / 1260.0 +
                               inv2 * (-1.0 / 1680.0 +
                                       inv2 * (1.0 / 1188.0 + inv2 * (-691.0 / 360360.0 + inv2 / 156.0))))));
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

inline constexpr double kStirlingSwitch = 20.0;

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(PositiveReal x) {
    const double v = x.value();
    if (v > detail::kStirlingSwitch) return detail::log_gamma_stirling(v);
    // Shift into the Stirling range; the product stays far from overflow.
    if (v >= 7.0) {
        double shift = 0.0;
        double y = v;
        while (y <= detail::kStirlingSwitch) {
            shift += std::log(y);
            y += 1.0;
        }
        return detail::log_gamma_stirling(y) - shift;
    }
    if (v >= 0.5) return detail::log_gamma_lanczos(v);
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * v)) - detail::log_gamma_lanczos(1.0 - v);
}

/// Gamma(x) for moderate positive x (overflows beyond ~171).
inline double gamma_fn(PositiveReal x) { return std::exp(log_gamma(x)); }

/// Gamma(a) / Gamma(b), finite even when Gamma(a) alone overflows.
inline double gamma_ratio(PositiveReal a, PositiveReal b) { return std::exp(log_gamma(a) - log_gamma(b)); }

/// Surface area |S^{d-1}| of the unit sphere in R^d.
inline double sphere_area(double d) {
    detail::require(d >= 1.0, "sphere_area: dimension must be >= 1");
    return 2.0 * std::exp(0.5 * d * std::log(std::numbers::pi) - log_gamma(0.5 * d));
}

}  // namespace glab
