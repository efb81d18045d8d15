#pragma once

// Critical stability dimension n0(s): first root above 2s of
//   g(x) = Gamma^2((x+2s)/4)/Gamma^2((x-2s)/4) * Gamma((x-2s)/2)/Gamma(x/2) - Gamma(1+s),
// and the fourth-order threshold, the largest root of n^2(n-4) - 128(n-2).

#include <cmath>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "glab/errors.hpp"
#include "glab/parallel.hpp"
#include "glab/roots.hpp"
#include "glab/specfun.hpp"

namespace glab {

inline constexpr double kCritScanStep = 0.1;
inline constexpr double kCritScanOffset = 0.05;
inline constexpr double kCritScanMax = 64.0;

/// g(x) for x > 2s, s in (0, 2]. The Gamma product is formed as one log-sum;
/// only the final subtraction of Gamma(1+s) is done in linear space.
inline double g_value(double x, double s) {
    detail::require(s > 0.0 && s <= 2.0, "g_value: s must lie in (0, 2]");
    if (!(x > 2.0 * s)) {
        std::ostringstream os;
        os << "g_value: need x > 2s, got x=" << x << ", s=" << s;
        throw DomainError(os.str());
    }
    const double log_f = 2.0 * (log_gamma((x + 2.0 * s) / 4.0) - log_gamma((x - 2.0 * s) / 4.0)) +
                         log_gamma((x - 2.0 * s) / 2.0) - log_gamma(x / 2.0);
    return std::exp(log_f) - gamma_fn(1.0 + s);
}

/// n0(s) for s in [1, 2]: coarse scan from 2s + 0.05 in steps of 0.1 up to 64,
/// then Brent refinement of the first bracketed sign change to |g| <= tol.
inline RootResult critical_dimension(double s, double tol = 1e-12) {
    if (!(s >= 1.0 && s <= 2.0)) {
        std::ostringstream os;
        os << "critical_dimension: s must lie in [1, 2] (supported range of the stability theory), got s=" << s;
        throw DomainError(os.str());
    }
    detail::require(tol > 0.0, "critical_dimension: tol must be > 0");
    auto g = [s](double x) { return g_value(x, s); };
    double lo = 2.0 * s + kCritScanOffset;
    double glo = g(lo);
    for (double hi = lo + kCritScanStep; hi <= kCritScanMax + 1e-12; hi += kCritScanStep) {
        const double ghi = g(hi);
        if (glo == 0.0) return {lo, {lo, lo}, 0, 0.0};
        if ((glo < 0.0) != (ghi < 0.0) || ghi == 0.0) {
            BrentOptions opt;
            opt.ftol = tol;
            return brent_root(g, lo, hi, opt);
        }
        lo = hi;
        glo = ghi;
    }
    std::ostringstream os;
    os << "critical_dimension: no sign change of g below x=" << kCritScanMax << " for s=" << s;
    throw ConvergenceError(os.str());
}

/// p(n) = n^2 (n-4) - 128 (n-2) = n^3 - 4n^2 - 128n + 256.
inline double quartic_threshold_poly(double n) { return ((n - 4.0) * n - 128.0) * n + 256.0; }

/// Largest real root of p, bracketed in [10, 20].
inline RootResult fourth_order_threshold() {
    BrentOptions opt;
    opt.ftol = 1e-11;
    return brent_root(quartic_threshold_poly, 10.0, 20.0, opt);
}

struct CurvePoint {
    double s;
    RootResult root;
};

/// n0(s) on an even grid of `steps` points in [s_min, s_max]. Rows are ordered by s.
inline std::vector<CurvePoint> critical_curve(double s_min, double s_max, std::size_t steps, double tol = 1e-12) {
    if (!(s_min >= 1.0 && s_min < s_max && s_max <= 2.0))
        throw DomainError("critical_curve: need 1 <= s_min < s_max <= 2");
    detail::require(steps >= 2, "critical_curve: steps must be >= 2");
    std::vector<CurvePoint> out(steps);
    parallel_for(steps, [&](std::size_t i) {
        const double s =
            i + 1 == steps ? s_max : s_min + (s_max - s_min) * static_cast<double>(i) / static_cast<double>(steps - 1);
        try {
            out[i] = {s, critical_dimension(s, tol)};
        } catch (const ConvergenceError& e) {
            std::ostringstream os;
            os << "critical_curve: at s=" << s << ": " << e.what();
            throw ConvergenceError(os.str());
        }
    });
    return out;
}

}  // namespace glab
