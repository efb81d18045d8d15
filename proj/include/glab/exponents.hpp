#pragma once

// Exponent arithmetic of the Moser-type bootstrap: the cubic X^3 - 8X + 4,
// the gap delta(alpha), terminal exponents and a simulator of the ladder
// alpha -> alpha + 1/2 or alpha -> q alpha.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "glab/errors.hpp"
#include "glab/roots.hpp"

namespace glab {

struct CubicRoots {
    double alpha_sharp;  // middle root, ~0.517304
    double alpha_star;   // largest root, ~2.53407
    double alpha_neg;    // negative root
};

inline double moser_cubic(double x) { return (x * x - 8.0) * x + 4.0; }

inline CubicRoots moser_cubic_roots() {
    BrentOptions opt;
    opt.ftol = 0.0;  // run to machine resolution of the bracket
    return {brent_root(moser_cubic, 0.0, 1.0, opt).root, brent_root(moser_cubic, 2.0, 3.0, opt).root,
            brent_root(moser_cubic, -4.0, -2.0, opt).root};
}

/// delta(alpha) = 2 sqrt(2 alpha - 1) / (alpha sqrt(alpha)) - 1, alpha > 1/2.
/// Positive exactly on (alpha_sharp, alpha_star).
inline double delta_gap(double alpha) {
    if (!(alpha > 0.5)) throw DomainError("delta_gap: alpha must be > 1/2");
    return 2.0 * std::sqrt(2.0 * alpha - 1.0) / (alpha * std::sqrt(alpha)) - 1.0;
}

enum class Flavor { fractional, local };

inline const char* to_string(Flavor f) { return f == Flavor::fractional ? "fractional" : "local"; }

/// Ladder geometry at (n, s): the improvement factor q, the applicability cap
/// on the input exponent, and the upper end of the admissible start window.
struct LadderGeometry {
    double factor;     // n/(n-s) fractional, n/(n-2) local
    double cap;        // min{n/(2s), alpha*} fractional, min{n/4, alpha*} local
    double start_max;  // min{n/(2n-2s), 1} fractional, min{n/(2n-4), 1} local
};

inline LadderGeometry ladder_geometry(double n, double s, Flavor flavor) {
    const double star = moser_cubic_roots().alpha_star;
    if (flavor == Flavor::fractional) {
        // s = 1 is admitted as the endpoint of the fractional family.
        if (!(s >= 1.0 && s < 2.0)) throw DomainError("fractional ladder: s must lie in [1, 2)");
        if (!(n > 2.0 * s)) throw DomainError("fractional ladder: need n > 2s");
        return {n / (n - s), std::min(n / (2.0 * s), star), std::min(n / (2.0 * n - 2.0 * s), 1.0)};
    }
    if (!(n > 4.0)) throw DomainError("local ladder: need n > 4");
    return {n / (n - 2.0), std::min(n / 4.0, star), std::min(n / (2.0 * n - 4.0), 1.0)};
}

/// Terminal exponent: max{ q * cap, cap + 1/2 }.
inline double alpha_bar(double n, double s, Flavor flavor) {
    const auto g = ladder_geometry(n, s, flavor);
    return std::max(g.factor * g.cap, g.cap + 0.5);
}

enum class LadderRule { start, plus_half, dimension_factor };

inline const char* to_string(LadderRule r) {
    switch (r) {
        case LadderRule::start: return "start";
        case LadderRule::plus_half: return "plus-half";
        case LadderRule::dimension_factor: return "dimension-factor";
    }
    return "?";
}

struct LadderStep {
    double exponent;
    LadderRule rule;
};

struct LadderTrace {
    std::vector<LadderStep> steps;
    double reached = 0.0;
    double target = 0.0;
};

/// Thrown when the target lies at or beyond alpha_bar, or the cap blocks
/// every further improvement.
class UnreachableTarget : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
};

/// Simulates the bootstrap from the midpoint of (alpha_sharp, start_max).
/// Each step improves an input exponent below the cap by the larger of the
/// two rules. When that improvement would land at or above the cap without
/// reaching the target, the recorded exponent is lowered to the midpoint of
/// [needed, cap), where `needed` is the least input from which one more step
/// reaches the target (integrability at an exponent implies it at any lower one).
inline LadderTrace bootstrap_ladder(double n, double s, double target_p, Flavor flavor) {
    const auto geo = ladder_geometry(n, s, flavor);
    const double bar = std::max(geo.factor * geo.cap, geo.cap + 0.5);
    if (!(target_p < bar)) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "target exceeds alpha_bar=%.5f (target=%.6g, n=%g, s=%g, %s)", bar, target_p,
                      n, s, to_string(flavor));
        throw UnreachableTarget(buf);
    }
    const double sharp = moser_cubic_roots().alpha_sharp;
    if (!(sharp < geo.start_max)) {
        std::ostringstream os;
        os << "bootstrap_ladder: empty start window (alpha_sharp=" << sharp << " >= " << geo.start_max << ")";
        throw UnreachableTarget(os.str());
    }
    LadderTrace trace;
    trace.target = target_p;
    double alpha = 0.5 * (sharp + geo.start_max);
    trace.steps.push_back({alpha, LadderRule::start});
    const double needed = std::min(target_p - 0.5, target_p / geo.factor);
    constexpr int kMaxSteps = 1000;
    for (int i = 0; i < kMaxSteps && alpha < target_p; ++i) {
        if (!(alpha < geo.cap)) {
            std::ostringstream os;
            os << "bootstrap_ladder: cap " << geo.cap << " blocks further improvement at alpha=" << alpha;
            throw UnreachableTarget(os.str());
        }
        const double by_half = alpha + 0.5;
        const double by_factor = geo.factor * alpha;
        const LadderRule rule = by_factor > by_half ? LadderRule::dimension_factor : LadderRule::plus_half;
        double next = std::max(by_half, by_factor);
        if (next < target_p && next >= geo.cap) next = 0.5 * (std::max(needed, alpha) + geo.cap);
        trace.steps.push_back({next, rule});
        alpha = next;
    }
    trace.reached = alpha;
    return trace;
}

}  // namespace glab
