#pragma once

// Closed-form constants of the fractional Gelfand problem, all assembled in
// log space from Gamma ratios. n is a real parameter throughout.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "glab/errors.hpp"
#include "glab/specfun.hpp"

namespace glab {

/// Coordinate (n, s) of every constant and threshold: s in (0, 2], n > 2s.
struct ParamPoint {
    double n;
    double s;

    void validate() const {
        if (!(s > 0.0 && s <= 2.0)) {
            std::ostringstream os;
            os << "ParamPoint: s must lie in (0, 2], got s=" << s;
            throw DomainError(os.str());
        }
        if (!(n > 2.0 * s)) {
            std::ostringstream os;
            os << "ParamPoint: need n > 2s, got n=" << n << ", s=" << s;
            throw DomainError(os.str());
        }
    }
};

/// Sharp fractional Hardy constant
///   Lambda_{n,s} = 4^s Gamma^2((n+2s)/4) / Gamma^2((n-2s)/4).
inline double hardy_constant(ParamPoint p) {
    p.validate();
    const double lr = log_gamma((p.n + 2.0 * p.s) / 4.0) - log_gamma((p.n - 2.0 * p.s) / 4.0);
    return std::exp(2.0 * p.s * std::numbers::ln2 + 2.0 * lr);
}

/// Coefficient of the singular solution u = -2s log|x| + log A_{n,s}:
///   A_{n,s} = 4^s Gamma(n/2) Gamma(1+s) / Gamma((n-2s)/2).
inline double nonlinear_coefficient(ParamPoint p) {
    p.validate();
    const double l = log_gamma(p.n / 2.0) + log_gamma(1.0 + p.s) - log_gamma((p.n - 2.0 * p.s) / 2.0);
    return std::exp(2.0 * p.s * std::numbers::ln2 + l);
}

/// Normalization of the singular-integral form of (-Delta)^t, 0 < t < 1,
/// matching the Fourier symbol |xi|^{2t}:
///   C_{n,t} = 4^t Gamma(n/2+t) / (pi^{n/2} |Gamma(-t)|),  |Gamma(-t)| = Gamma(1-t)/t.
inline double frac_lap_norm(double n, double t) {
    detail::require(t > 0.0 && t < 1.0, "frac_lap_norm: order t must lie in (0, 1)");
    detail::require(n >= 1.0, "frac_lap_norm: dimension must be >= 1");
    return t * std::exp(2.0 * t * std::numbers::ln2 + log_gamma(n / 2.0 + t) - log_gamma(1.0 - t) -
                        0.5 * n * std::log(std::numbers::pi));
}

/// Analytic continuation of C_{n,t} to t in (0, 2):
///   t (1-t) 4^t Gamma(n/2+t) / (pi^{n/2} Gamma(2-t)).
/// Agrees with frac_lap_norm on (0,1), vanishes at t = 1 and is negative on
/// (1,2), where it multiplies the finite-part (regularized) singular integral.
inline double hypersingular_norm(double n, double t) {
    detail::require(t > 0.0 && t < 2.0, "hypersingular_norm: order must lie in (0, 2)");
    return t * (1.0 - t) *
           std::exp(2.0 * t * std::numbers::ln2 + log_gamma(n / 2.0 + t) - log_gamma(2.0 - t) -
                    0.5 * n * std::log(std::numbers::pi));
}

/// hypersingular_norm(n,t) / (2 - 2t), continued through t = 1. This is the
/// factor in front of the Hadamard finite part of a |h|^{1-2t} singularity.
inline double hypersingular_pole_factor(double n, double t) {
    detail::require(t > 0.0 && t < 2.0, "hypersingular_pole_factor: order must lie in (0, 2)");
    return 0.5 * t *
           std::exp(2.0 * t * std::numbers::ln2 + log_gamma(n / 2.0 + t) - log_gamma(2.0 - t) -
                    0.5 * n * std::log(std::numbers::pi));
}

/// Poisson-kernel normalization kappa_{n,s} = Gamma(n/2+s) / (Gamma(s) pi^{n/2}),
/// making kappa * y^{2s} (y^2+|x|^2)^{-n/2-s} integrate to one over R^n.
inline double poisson_norm(double n, double s) {
    detail::require(s > 0.0, "poisson_norm: s must be > 0");
    detail::require(n >= 1.0, "poisson_norm: dimension must be >= 1");
    return std::exp(log_gamma(n / 2.0 + s) - log_gamma(s) - 0.5 * n * std::log(std::numbers::pi));
}

/// kappa_s = Gamma(1 - s/2) / (2^{s-1} Gamma(s/2)), s in (0, 2).
inline double neumann_norm(double s) {
    detail::require(s > 0.0 && s < 2.0, "neumann_norm: s must lie in (0, 2)");
    return std::exp(log_gamma(1.0 - s / 2.0) - log_gamma(s / 2.0) - (s - 1.0) * std::numbers::ln2);
}

/// Constant of the boundary source condition lim y^b d_y Delta_b u_e = C e^u for
/// the order-s Poisson extension, 1 < s < 2. Read off from the y^{2s} term of
/// the extension symbol: C = 8 Gamma(2-s) / (4^s Gamma(s)). Independent of n.
inline double extension_source_norm(double s) {
    detail::require(s > 1.0 && s < 2.0, "extension_source_norm: s must lie in (1, 2)");
    return 8.0 * std::exp(log_gamma(2.0 - s) - log_gamma(s) - 2.0 * s * std::numbers::ln2);
}

/// All named constants at one parameter point. Entries whose defining range
/// excludes the point are left empty.
struct ConstantBundle {
    double hardy;                         // Lambda_{n,s}
    double coeff;                         // A_{n,s}
    std::optional<double> frac_lap_norm;  // C_{n,t}, t = s (s<1) or s-1 (1<s<2)
    double poisson_norm;                  // kappa_{n,s}
    std::optional<double> neumann_norm;   // kappa_s, s in (0,2)
    double b;                             // 3 - 2s
};

/// Order of the nonlocal factor of (-Delta)^s: s itself below one, s-1 on (1,2).
inline std::optional<double> nonlocal_order(double s) {
    if (s > 0.0 && s < 1.0) return s;
    if (s > 1.0 && s < 2.0) return s - 1.0;
    return std::nullopt;
}

inline ConstantBundle constant_bundle(ParamPoint p) {
    p.validate();
    ConstantBundle out{};
    out.hardy = hardy_constant(p);
    out.coeff = nonlinear_coefficient(p);
    if (auto t = nonlocal_order(p.s)) out.frac_lap_norm = frac_lap_norm(p.n, *t);
    out.poisson_norm = poisson_norm(p.n, p.s);
    if (p.s < 2.0) out.neumann_norm = neumann_norm(p.s);
    out.b = 3.0 - 2.0 * p.s;
    return out;
}

}  // namespace glab
