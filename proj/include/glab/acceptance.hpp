#pragma once

// Acceptance suite: one check per numbered criterion, shared by the CLI
// `acceptance` command and the acceptance test binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "glab/biharmonic.hpp"
#include "glab/constants.hpp"
#include "glab/critdim.hpp"
#include "glab/exponents.hpp"
#include "glab/extension.hpp"
#include "glab/fraclap.hpp"
#include "glab/stability.hpp"

namespace glab::acceptance {

struct Result {
    int id = 0;
    std::string title;
    bool checks_ok = false;
    double seconds = 0.0;
    double budget = 0.0;  // seconds
    std::string detail;

    bool pass() const { return checks_ok && seconds <= budget; }
};

namespace detail {

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

inline std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

struct Check {
    bool ok = true;
    std::ostringstream msg;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            msg << (msg.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) { msg << (msg.tellp() > 0 ? "; " : "") << what; }
};

}  // namespace detail

inline void c01(detail::Check& c) {
    const auto r = critical_dimension(1.0, 1e-8);
    c.expect(std::abs(r.root - 10.0) < 1e-6, "n0(1)=" + detail::fmt("%.10f", r.root));
    c.expect(std::abs(g_value(r.root, 1.0)) <= 1e-8, "|g|=" + detail::fmt("%.2e", std::abs(g_value(r.root, 1.0))));
    c.note("n0(1)=" + detail::fmt("%.9f", r.root) + " |g|=" + detail::fmt("%.1e", std::abs(r.residual)));
}

inline void c02(detail::Check& c) {
    const auto r = critical_dimension(2.0);
    const auto q = fourth_order_threshold();
    c.expect(std::abs(r.root - 12.565) <= 5e-3, "n0(2) off 12.565");
    c.expect(std::abs(r.root - q.root) <= 1e-6, "n0(2) off quartic root");
    c.note("n0(2)=" + detail::fmt("%.6f", r.root) + " quartic=" + detail::fmt("%.6f", q.root));
}

inline void c03(detail::Check& c) {
    const auto curve = critical_curve(1.0, 2.0, 21);
    double prev = 0.0;
    for (const auto& p : curve) {
        const double v = p.root.root;
        c.expect(v >= 10.0 - 1e-9 && v <= 12.57, "n0(" + detail::fmt("%g", p.s) + ") out of [10, 12.57]");
        c.expect(v >= prev, "not monotone at s=" + detail::fmt("%g", p.s));
        prev = v;
    }
    c.note("n0 from " + detail::fmt("%.4f", curve.front().root.root) + " to " + detail::fmt("%.4f", curve.back().root.root));
}

inline void c04(detail::Check& c) {
    const auto r = moser_cubic_roots();
    c.expect(std::abs(r.alpha_sharp - 0.517304) <= 1e-5, "alpha_sharp");
    c.expect(std::abs(r.alpha_star - 2.53407) <= 1e-5, "alpha_star");
    c.expect(std::abs(delta_gap(r.alpha_sharp)) <= 1e-9 && std::abs(delta_gap(r.alpha_star)) <= 1e-9, "delta at roots");
    for (int i = 1; i <= 50; ++i) {
        const double a = r.alpha_sharp + (r.alpha_star - r.alpha_sharp) * i / 51.0;
        if (!(delta_gap(a) > 0.0)) {
            c.expect(false, "delta <= 0 at " + detail::fmt("%g", a));
            break;
        }
    }
    c.note("roots " + detail::fmt("%.6f", r.alpha_sharp) + ", " + detail::fmt("%.5f", r.alpha_star));
}

inline void c05(detail::Check& c) {
    double worst = 0.0;
    for (int n = 5; n <= 16; ++n) {
        const double L = hardy_constant({double(n), 2.0}), A = nonlinear_coefficient({double(n), 2.0});
        const double Le = n * n * (n - 4.0) * (n - 4.0) / 16.0, Ae = 8.0 * (n - 2.0) * (n - 4.0);
        worst = std::max({worst, detail::rel(L, Le), detail::rel(A, Ae)});
    }
    c.expect(worst <= 1e-12, "max rel " + detail::fmt("%.2e", worst));
    c.note("max rel " + detail::fmt("%.1e", worst));
}

inline void c06(detail::Check& c) {
    const double cases[3][2] = {{3, 0.5}, {5, 0.25}, {10, 0.75}};
    double worst = 0.0;
    for (const auto& nt : cases) {
        const double n = nt[0], t = nt[1];
        const auto u = log_family(t);
        const double A = nonlinear_coefficient({n, t});
        for (double r : {0.5, 1.0, 2.0}) worst = std::max(worst, detail::rel(radial_frac_lap(u, n, t, r), A * std::pow(r, -2.0 * t)));
    }
    c.expect(worst <= 2e-3, "max rel " + detail::fmt("%.2e", worst));
    c.note("max rel " + detail::fmt("%.1e", worst));
}

inline void c07(detail::Check& c) {
    const double cases[3][2] = {{10, 1.0}, {10, 1.5}, {5, 0.5}};
    double worst = 0.0;
    for (const auto& ns : cases) worst = std::max(worst, detail::rel(fall_hardy_integral(ns[0], ns[1]), hardy_constant({ns[0], ns[1]})));
    c.expect(worst <= 1e-2, "max rel " + detail::fmt("%.2e", worst));
    c.note("max rel " + detail::fmt("%.1e", worst));
}

inline void c08(detail::Check& c) {
    const double grid[10][2] = {{5, 1.1},  {5, 1.9},  {6, 1.5},  {8, 1.25}, {10, 1.5},
                                {12, 1.75}, {13, 1.2}, {16, 1.6}, {20, 1.05}, {7.5, 1.45}};
    double worst = 0.0;
    for (const auto& p : grid) {
        const double n = p[0], s = p[1];
        worst = std::max(worst, detail::rel(nonlinear_coefficient({n, s - 1.0}) * 2.0 * s * (n - 2.0 * s),
                                            nonlinear_coefficient({n, s})));
    }
    c.expect(worst <= 1e-12, "max rel " + detail::fmt("%.2e", worst));
    c.note("max rel " + detail::fmt("%.1e", worst));
}

inline void c09(detail::Check& c) {
    const std::vector<double> eps{0.02, 0.01, 0.005, 0.0025};
    std::ostringstream signs;
    for (int n = 5; n <= 16; ++n) {
        const auto r = rellich_family_sign(n, eps);
        c.expect(n <= 12 ? r.sign < 0 : r.sign > 0, "wrong sign at n=" + std::to_string(n));
        signs << (r.sign < 0 ? '-' : '+');
    }
    c.note("signs n=5..16: " + signs.str());
}

inline void c10(detail::Check& c) {
    const auto grid = log_grid(0.5, 8.0);
    double worst = 0.0;
    for (double n : {5.0, 8.0, 12.0, 13.0}) {
        const auto u = singular_profile(n, grid);
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i <= 20; ++i) {
            const double e = energy_local(u, n, std::pow(4.0, i / 20.0)).total;
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
        worst = std::max(worst, (hi - lo) / std::max(std::abs(lo), std::abs(hi)));
    }
    c.expect(worst <= 1e-3, "rel variation " + detail::fmt("%.2e", worst));
    c.note("rel variation " + detail::fmt("%.1e", worst));
}

/// Perturbation used for the n = 12 half of criterion 11.
struct PerturbationSpec {
    double amp = 0.1, center = 2.0, width = 0.5;
};

inline void c11(detail::Check& c) {
    const auto shot = shoot_bisect(13.0, 0.0, -100.0, 1.0, 1e3);
    double worst13 = 1e300;
    for (int i = 0; i < 10; ++i) {
        const double r = 0.5 * std::pow(20.0, i / 9.0);
        worst13 = std::min(worst13, energy_local_slope(shot.profile, 13.0, r) - energy_local_bound(shot.profile, 13.0, r));
    }
    c.expect(worst13 >= -1e-4, "n=13 entire-like: min(dE/dr - bound)=" + detail::fmt("%.3e", worst13));

    const PerturbationSpec ps;
    const auto pert = perturbed_singular_profile(12.0, log_grid(1e-3, 1e3, 100), ps.amp, ps.center, ps.width);
    double worst12 = 1e300;
    for (int i = 0; i < 10; ++i) {
        const double r = 1.0 + 0.25 * i;
        worst12 = std::min(worst12, energy_local_slope(pert, 12.0, r) - energy_local_bound(pert, 12.0, r));
    }
    c.expect(worst12 >= -1e-4, "n=12 perturbed singular: min(dE/dr - bound)=" + detail::fmt("%.3e", worst12));
    c.note("b*=" + detail::fmt("%.10f", shot.b) + " min13=" + detail::fmt("%.3e", worst13) +
           " min12=" + detail::fmt("%.3e", worst12));
}

inline void c12(detail::Check& c) {
    const double mass = std::abs(poisson_kernel_mass(5.0, 1.5, 1.0, 1.0) - 1.0);
    c.expect(mass <= 1e-6, "kernel mass error " + detail::fmt("%.2e", mass));

    const auto cst = poisson_extend(constant_function(2.5), 10.0, 1.5, make_half_space_grid(3.0, 41, 1e-3, 3.0, 41, 0.0));
    double ce = 0.0;
    for (double v : cst.values) ce = std::max(ce, std::abs(v - 2.5));
    c.expect(ce <= 1e-8, "constant extension error " + detail::fmt("%.2e", ce));

    const auto ue = poisson_extend(singular_solution(10.0, 1.5), 10.0, 1.5, make_half_space_grid(3.0, 121, 1e-3, 3.0, 121, 0.0));
    const FractionalEnergy E(ue, 10.0, 1.5);
    const double e1 = E.at(1.0).total, e2 = E.at(2.0).total;
    const double dev = detail::rel(e2, e1);
    c.expect(dev <= 5e-2, "E(1) vs E(2) rel " + detail::fmt("%.2e", dev));
    c.note("mass err " + detail::fmt("%.1e", mass) + ", const err " + detail::fmt("%.1e", ce) + ", E rel dev " +
           detail::fmt("%.1e", dev));
}

inline void c13(detail::Check& c) {
    const double grid[10][3] = {{10, 1.5, 0.2}, {10, 1.5, 0.95}, {10, 1.0, 0.5}, {12, 1.25, 0.8}, {13, 1.9, 0.6},
                                {6, 1.2, 0.9},  {8, 1.75, 0.4},  {16, 1.5, 0.99}, {20, 1.1, 0.7}, {5, 1.0, 0.3}};
    int reached = 0, refused = 0;
    for (const auto& g : grid) {
        const double n = g[0], s = g[1];
        const double bar = alpha_bar(n, s, Flavor::fractional);
        const double p = g[2] * bar;
        try {
            const auto t = bootstrap_ladder(n, s, p, Flavor::fractional);
            if (t.reached >= p) ++reached;
            else c.expect(false, "fell short at n=" + detail::fmt("%g", n));
        } catch (const ConvergenceError& e) {
            c.expect(false, std::string("unreached: ") + e.what());
        }
        try {
            bootstrap_ladder(n, s, bar + 0.1, Flavor::fractional);
            c.expect(false, "accepted target above alpha_bar at n=" + detail::fmt("%g", n));
        } catch (const UnreachableTarget&) {
            ++refused;
        }
    }
    c.note(std::to_string(reached) + "/10 reached, " + std::to_string(refused) + "/10 refused");
}

struct Entry {
    int id;
    const char* title;
    double budget;
    void (*run)(detail::Check&);
};

inline const std::vector<Entry>& entries() {
    static const std::vector<Entry> e{
        {1, "n0(1) = 10", 0.01, c01},
        {2, "n0(2) and the quartic root", 0.01, c02},
        {3, "n0(s) curve bounds and monotonicity", 1.0, c03},
        {4, "Moser cubic roots and delta window", 0.01, c04},
        {5, "s = 2 Hardy constant and A_{n,2}", 0.01, c05},
        {6, "fractional Laplacian of the log family", 30.0, c06},
        {7, "Fall integral vs Hardy constant", 60.0, c07},
        {8, "A_{n,s} composition identity", 0.01, c08},
        {9, "Rellich log-coefficient sign flip", 10.0, c09},
        {10, "local E constant on singular solution", 5.0, c10},
        {11, "local E derivative bound", 30.0, c11},
        {12, "Poisson kernel, constant extension, fractional E", 300.0, c12},
        {13, "bootstrap ladder reach and refusal", 0.01, c13},
    };
    return e;
}

inline Result run_one(const Entry& en) {
    detail::Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        en.run(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    Result r;
    r.id = en.id;
    r.title = en.title;
    r.checks_ok = c.ok;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.budget = en.budget;
    r.detail = c.msg.str();
    return r;
}

inline constexpr double kSuiteBudget = 600.0;

/// Runs criteria 1-13 (or the subset `only`), then criterion 14 on the total
/// wall time. `on_row` sees each result as it completes.
inline std::vector<Result> run(const std::vector<int>& only = {}, const std::function<void(const Result&)>& on_row = {}) {
    std::vector<Result> out;
    const auto t0 = std::chrono::steady_clock::now();
    auto wanted = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };
    for (const auto& en : entries()) {
        if (!wanted(en.id)) continue;
        out.push_back(run_one(en));
        if (on_row) on_row(out.back());
    }
    if (wanted(14)) {
        Result r;
        r.id = 14;
        r.title = "full suite runtime and report";
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.budget = kSuiteBudget;
        const std::size_t rows = only.empty() ? entries().size() : out.size();
        r.checks_ok = out.size() == rows;
        r.detail = std::to_string(out.size()) + " rows reported";
        out.push_back(r);
        if (on_row) on_row(r);
    }
    return out;
}

inline std::string format_row(const Result& r) {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d  %-50s %9.3fs / %gs  ", r.pass() ? "PASS" : "FAIL", r.id, r.title.c_str(),
                  r.seconds, r.budget);
    std::string s = head + r.detail;
    if (r.checks_ok && !r.pass()) s += " (over time budget)";
    return s;
}

}  // namespace glab::acceptance
