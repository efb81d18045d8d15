#pragma once

// Bracketed scalar root finding: Brent's method (inverse quadratic /
// secant steps safeguarded by bisection).

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <utility>

#include "glab/errors.hpp"

namespace glab {

/// Outcome of a bracketed solve.
struct RootResult {
    double root = 0.0;
    std::pair<double, double> bracket{0.0, 0.0};  // final bracket, straddles the sign change
    std::size_t iterations = 0;
    double residual = 0.0;  // f(root)
};

struct BrentOptions {
    double ftol = 1e-12;      // stop when |f| <= ftol
    double xtol = 0.0;        // stop when bracket width <= xtol (0: only machine resolution)
    std::size_t max_iter = 200;
};

/// Root of f in [lo, hi], assuming f(lo) and f(hi) differ in sign (or one is 0).
template <class F>
RootResult brent_root(F&& f, double lo, double hi, const BrentOptions& opt = {}) {
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb)) throw ConvergenceError("brent_root: non-finite value at bracket end");
    if (fa == 0.0) return {a, {a, a}, 0, 0.0};
    if (fb == 0.0) return {b, {b, b}, 0, 0.0};
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "brent_root: [" << lo << ", " << hi << "] does not bracket a sign change (f=" << fa << ", " << fb
           << ")";
        throw ConvergenceError(os.str());
    }
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool bisected = true;
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double mid = 0.5 * (a + b);
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * opt.xtol;
        const bool outside = (s - mid) * (s - b) > 0.0;
        const bool slow = bisected ? std::abs(s - b) >= 0.5 * std::abs(b - c) : std::abs(s - b) >= 0.5 * std::abs(c - d);
        const bool tiny = bisected ? std::abs(b - c) < tol : std::abs(c - d) < tol;
        if (outside || slow || tiny) {
            s = mid;
            bisected = true;
        } else {
            bisected = false;
        }
        const double fs = f(s);
        if (!std::isfinite(fs)) throw ConvergenceError("brent_root: non-finite function value");
        d = c;
        c = b;
        fc = fb;
        if ((fa > 0.0) != (fs > 0.0)) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
        const double width = std::abs(b - a);
        if (std::abs(fb) <= opt.ftol || fb == 0.0 || width <= std::max(opt.xtol, 4.0 * eps * std::abs(b))) {
            return {b, {std::min(a, b), std::max(a, b)}, it, fb};
        }
    }
    std::ostringstream os;
    os << "brent_root: no convergence after " << opt.max_iter << " iterations";
    throw ConvergenceError(os.str());
}

/// Plain bisection on a bracket; used where f is only known through its sign.
template <class Pred>
std::pair<double, double> bisect_predicate(Pred&& is_upper, double lo, double hi, double width,
                                           std::size_t max_iter = 400) {
    for (std::size_t i = 0; i < max_iter && hi - lo > width; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (is_upper(mid))
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

}  // namespace glab
