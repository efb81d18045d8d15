#pragma once

// Radial function r -> u(r) on (0, inf) with its large-r class, which the
// nonlocal operators use to close their far-field integrals analytically.

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include "glab/errors.hpp"

namespace glab {

/// u(r) ~ slope * log r + const for large r.
struct LogDecay {
    double slope;
};

/// u(r) ~ c r^{-p}, p > 0.
struct PowerDecay {
    double p;
};

/// u(r) = 0 for r >= radius.
struct CompactSupport {
    double radius;
};

using DecayTag = std::variant<LogDecay, PowerDecay, CompactSupport>;

inline std::string describe(const DecayTag& tag) {
    std::ostringstream os;
    if (auto* l = std::get_if<LogDecay>(&tag))
        os << "log(slope=" << l->slope << ")";
    else if (auto* p = std::get_if<PowerDecay>(&tag))
        os << "power(p=" << p->p << ")";
    else
        os << "compact(R=" << std::get<CompactSupport>(tag).radius << ")";
    return os.str();
}

struct RadialFunction {
    using Fn = std::function<double(double)>;

    Fn value;
    DecayTag decay = CompactSupport{0.0};
    // Optional exact first/second derivatives; centered differences otherwise.
    Fn d1 = nullptr;
    Fn d2 = nullptr;

    double operator()(double r) const { return value(r); }

    double first(double r) const {
        if (d1) return d1(r);
        const double h = 1e-4 * r;
        return (value(r + h) - value(r - h)) / (2.0 * h);
    }

    double second(double r) const {
        if (d2) return d2(r);
        const double h = 1e-3 * r;
        return (value(r + h) - 2.0 * value(r) + value(r - h)) / (h * h);
    }
};

/// u(r) = c - 2 k log r with exact derivatives.
inline RadialFunction log_family(double k, double c = 0.0) {
    RadialFunction u;
    u.value = [=](double r) { return c - 2.0 * k * std::log(r); };
    u.d1 = [=](double r) { return -2.0 * k / r; };
    u.d2 = [=](double r) { return 2.0 * k / (r * r); };
    u.decay = LogDecay{-2.0 * k};
    return u;
}

inline RadialFunction constant_function(double c) {
    RadialFunction u;
    u.value = [=](double) { return c; };
    u.d1 = [](double) { return 0.0; };
    u.d2 = [](double) { return 0.0; };
    u.decay = LogDecay{0.0};
    return u;
}

/// C^2 compactly supported bump amp * (1 - (r/R)^2)^3 on [0, R).
inline RadialFunction bump_function(double amp, double radius) {
    RadialFunction u;
    u.value = [=](double r) {
        const double q = r / radius;
        return q < 1.0 ? amp * std::pow(1.0 - q * q, 3) : 0.0;
    };
    u.d1 = [=](double r) {
        const double q = r / radius;
        return q < 1.0 ? -6.0 * amp * q * std::pow(1.0 - q * q, 2) / radius : 0.0;
    };
    u.d2 = [=](double r) {
        const double q = r / radius, w = 1.0 - q * q;
        return q < 1.0 ? amp * (-6.0 * w * w + 24.0 * q * q * w) / (radius * radius) : 0.0;
    };
    u.decay = CompactSupport{radius};
    return u;
}

/// Checks the decay tag against samples at r = 1e3 and 1e4.
/// Returns a diagnostic string when inconsistent.
inline std::optional<std::string> check_decay_tag(const RadialFunction& u, double rtol = 1e-2) {
    const double r1 = 1e3, r2 = 1e4;
    const double u1 = u(r1), u2 = u(r2);
    if (!std::isfinite(u1) || !std::isfinite(u2)) return "non-finite value at large r";
    std::ostringstream os;
    if (auto* l = std::get_if<LogDecay>(&u.decay)) {
        const double measured = (u2 - u1) / std::log(r2 / r1);
        if (std::abs(measured - l->slope) > rtol * std::max(1.0, std::abs(l->slope))) {
            os << "log slope " << measured << " != tagged " << l->slope;
            return os.str();
        }
    } else if (auto* p = std::get_if<PowerDecay>(&u.decay)) {
        if (u1 != 0.0 && u2 != 0.0) {
            const double measured = -std::log(std::abs(u2 / u1)) / std::log(r2 / r1);
            if (std::abs(measured - p->p) > rtol * std::max(1.0, p->p)) {
                os << "power " << measured << " != tagged " << p->p;
                return os.str();
            }
        }
    } else {
        const double R = std::get<CompactSupport>(u.decay).radius;
        if (R <= r1 && (u1 != 0.0 || u2 != 0.0)) return "nonzero beyond tagged support";
    }
    return std::nullopt;
}

}  // namespace glab
