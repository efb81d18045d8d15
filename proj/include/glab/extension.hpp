#pragma once

// Order-s Poisson extension (1 < s < 2) of radial boundary data, residuals of
// the extended system Delta_b^2 u_e = 0 with its two boundary conditions, and
// the fractional monotonicity energy E(lambda, 0, u_e).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "glab/constants.hpp"
#include "glab/errors.hpp"
#include "glab/halfspace.hpp"
#include "glab/parallel.hpp"
#include "glab/quadrature.hpp"
#include "glab/radial_function.hpp"
#include "glab/specfun.hpp"

namespace glab {

namespace detail {

inline void require_extension_order(double n, double s, const char* where) {
    require(s > 1.0 && s < 2.0, std::string(where) + ": s must lie in (1, 2)");
    require(n > 2.0 * s - 1.0 && n >= 2.0, std::string(where) + ": dimension too small");
}

}  // namespace detail

/// Mean of u over the sphere of radius rp about a point at distance rho from
/// the origin: (|S^{n-2}|/|S^{n-1}|) int_0^pi u(|x + rp w|) sin^{n-2} theta dtheta.
/// Fixed 16-point Gauss-Legendre panels, graded toward theta = pi when the
/// sphere passes near the origin.
inline double spherical_mean(const RadialFunction& u, double n, double rho, double rp) {
    if (rho == 0.0) return u(rp);
    if (rp == 0.0) return u(rho);
    constexpr double pi = std::numbers::pi;
    std::vector<double> br{0.0, 0.25 * pi, 0.5 * pi, 0.75 * pi, pi};
    const double gap = std::abs(rho - rp) / std::max(rho, rp);
    if (gap < 0.5)
        for (double d = std::max(gap, 1e-12); d < 0.25 * pi; d *= 2.0) br.push_back(pi - d);
    if (const auto* c = std::get_if<CompactSupport>(&u.decay)) {
        const double ct = (c->radius * c->radius - rho * rho - rp * rp) / (2.0 * rho * rp);
        if (ct > -1.0 && ct < 1.0) br.push_back(std::acos(ct));
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end(), [](double a, double b) { return b - a < 1e-15; }), br.end());
    static const quad::Rule rule = quad::gauss_legendre(16, 0.0, 1.0);
    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < br.size(); ++p) {
        const double a = br[p], h = br[p + 1] - br[p];
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const double th = a + h * rule.nodes[k];
            const double z2 = rho * rho + rp * rp + 2.0 * rho * rp * std::cos(th);
            acc += h * rule.weights[k] * u(std::sqrt(std::max(z2, 0.0))) * std::pow(std::sin(th), n - 2.0);
        }
    }
    const double norm = std::exp(log_gamma(0.5 * n) - log_gamma(0.5 * (n - 1.0))) / std::sqrt(pi);
    return norm * acc;
}

/// Numerical int_{R^n} kappa_{n,s} y^{2s} (y^2 + |x - z|^2)^{-n/2-s} dz at |x| = rho,
/// by direct quadrature in |z| and the polar angle.
inline double poisson_kernel_mass(double n, double s, double rho, double y) {
    detail::require(n >= 2.0 && s > 0.0 && y > 0.0 && rho >= 0.0, "poisson_kernel_mass: bad arguments");
    const double kappa = poisson_norm(n, s), m = 0.5 * n + s;
    const double s_sub = sphere_area(n - 1.0);
    auto shell = [&](double R) {
        auto f = [&](double th) {
            const double d2 = y * y + rho * rho + R * R - 2.0 * rho * R * std::cos(th);
            return std::pow(d2, -m) * std::pow(std::sin(th), n - 2.0);
        };
        return s_sub * quad::gk(f, 0.0, std::numbers::pi, 1e-13).value * std::pow(R, n - 1.0);
    };
    const double scale = std::max(rho, y), R_cut = 1e5 * scale;
    std::vector<double> br{0.0};
    for (double x = 0.125 * y; x < R_cut; x *= 2.0) br.push_back(x);
    br.push_back(R_cut);
    const double body = quad::gk_panels(shell, std::span<const double>(br), 1e-13).value;
    // tail: |x - z| ~ |z| beyond R_cut
    const double tail = sphere_area(n) * std::pow(R_cut, -2.0 * s) / (2.0 * s);
    return kappa * std::pow(y, 2.0 * s) * (body + tail);
}

struct ExtendOptions {
    double panel_ratio = 1.5;  // geometric growth of source-radius panels
    unsigned order = 16;       // Gauss-Legendre nodes per panel (in log radius)
    double far = 1e4;          // source radii beyond far * (grid extent) use the decay tag
};

/// u_e(rho, y) = kappa int y^{2s} (y^2 + |x - z|^2)^{-n/2-s} u(z) dz on the grid of
/// `grid` (its values are ignored). With rp = |z - x|, the integral is
/// kappa |S^{n-1}| int_0^inf y^{2s} rp^{n-1} (y^2 + rp^2)^{-n/2-s} U(rho, rp) drp,
/// U the spherical mean. U does not depend on y, so for each rho it is
/// tabulated once on log-radius Gauss nodes and reused for every height.
inline HalfSpaceField poisson_extend(const RadialFunction& u, double n, double s, HalfSpaceField grid,
                                     ExtendOptions opt = {}) {
    detail::require_extension_order(n, s, "poisson_extend");
    grid.b = 3.0 - 2.0 * s;
    grid.values.assign(grid.rho.size() * grid.y.size(), 0.0);
    grid.valid.clear();
    grid.validate();
    if (auto msg = check_decay_tag(u)) throw DomainError("poisson_extend: decay tag mismatch: " + *msg);

    const double kw = poisson_norm(n, s) * sphere_area(n);
    const double extent = std::max(grid.rho.back(), grid.y.back());
    const double rp_min = 1e-3 * grid.y.front(), rp_max = opt.far * extent;
    if (const auto* c = std::get_if<CompactSupport>(&u.decay))
        detail::require(c->radius + grid.rho.back() < rp_max, "poisson_extend: support beyond far cutoff");
    const auto rule = quad::gauss_legendre(opt.order, 0.0, 1.0);

    const std::size_t ny = grid.y.size();
    parallel_for(grid.rho.size(), [&](std::size_t i) {
        const double rho = grid.rho[i];
        std::vector<double> br;
        for (double x = rp_min; x < rp_max; x *= opt.panel_ratio) br.push_back(x);
        br.push_back(rp_max);
        if (rho > 0.0)
            for (int k = 1; k <= 12; ++k) {
                br.push_back(rho * (1.0 - std::ldexp(1.0, -k)));
                br.push_back(rho * (1.0 + std::ldexp(1.0, -k)));
            }
        if (const auto* c = std::get_if<CompactSupport>(&u.decay)) {
            if (std::abs(c->radius - rho) > 0.0) br.push_back(std::abs(c->radius - rho));
            br.push_back(c->radius + rho);
        }
        br.erase(std::remove_if(br.begin(), br.end(), [&](double x) { return x < rp_min || x > rp_max; }), br.end());
        std::sort(br.begin(), br.end());
        br.erase(std::unique(br.begin(), br.end(), [](double a, double b) { return b <= a * (1.0 + 1e-9); }), br.end());

        std::vector<double> rp, w, um;
        for (std::size_t p = 0; p + 1 < br.size(); ++p) {
            const double a = std::log(br[p]), b = std::log(br[p + 1]);
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                const double x = std::exp(a + (b - a) * rule.nodes[k]);
                rp.push_back(x);
                w.push_back((b - a) * rule.weights[k] * x);
                um.push_back(spherical_mean(u, n, rho, x));
            }
        }
        const double u_head = spherical_mean(u, n, rho, rp_min);
        const double u_far = u(rp_max);
        double tail_unit = 0.0;  // int_{rp_max}^inf rp^{-1-2s} u(rp) drp
        if (const auto* l = std::get_if<LogDecay>(&u.decay))
            tail_unit = std::pow(rp_max, -2.0 * s) * (u_far / (2.0 * s) + l->slope / (4.0 * s * s));
        else if (const auto* p = std::get_if<PowerDecay>(&u.decay))
            tail_unit = u_far * std::pow(rp_max, -2.0 * s) / (2.0 * s + p->p);

        for (std::size_t j = 0; j < ny; ++j) {
            const double yy = grid.y[j], ly = std::log(yy);
            double acc = 0.0;
            for (std::size_t k = 0; k < rp.size(); ++k) {
                const double lk = 2.0 * s * ly + (n - 1.0) * std::log(rp[k]) -
                                  (0.5 * n + s) * std::log(yy * yy + rp[k] * rp[k]);
                acc += w[k] * std::exp(lk) * um[k];
            }
            acc += std::pow(rp_min / yy, n) / n * u_head;
            acc += std::pow(yy, 2.0 * s) * tail_unit;
            grid.at(i, j) = kw * acc;
        }
    });

    grid.trace.clear();
    bool finite = true;
    std::vector<double> tr;
    for (double r : grid.rho) {
        const double v = u(r);
        finite = finite && std::isfinite(v);
        tr.push_back(v);
    }
    if (finite) grid.trace = std::move(tr);
    return grid;
}

// ---------------------------------------------------------------- residuals

/// Nodes used by yang_residuals: interior nodes with r_lo <= |X| <= r_hi and
/// polar angle from the boundary plane at least min_angle; boundary probes
/// rho in [rho_lo, rho_hi].
struct ProbeSet {
    double r_lo = 0.5, r_hi = 2.0;
    double min_angle = 0.25;  // radians
    double rho_lo = 0.5, rho_hi = 2.0;
};

struct YangResiduals {
    double interior = 0.0;
    double neumann = 0.0;
    std::optional<double> source;           // empty when the shape test is skipped
    std::optional<double> source_constant;  // fitted C in y^b d_y Delta_b u_e -> C e^u
    std::string note;
};

namespace detail {

/// c0 of the fit c0 + c1 y^p through the two lowest of three levels, checked
/// against the third; returns c0.
inline double extrapolate_to_zero(const double* yv, const double* gv, double p) {
    // least squares over the three levels
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < 3; ++k) {
        const double x = std::pow(yv[k], p);
        sx += x;
        sy += gv[k];
        sxx += x * x;
        sxy += x * gv[k];
    }
    const double den = 3.0 * sxx - sx * sx;
    const double c1 = (3.0 * sxy - sx * sy) / den;
    return (sy - c1 * sx) / 3.0;
}

}  // namespace detail

/// Boundary limits are extrapolated from the three lowest usable y-levels in
/// powers y^{4-2s}, the leading correction in both y^b d_y u_e and
/// y^b d_y Delta_b u_e for the order-s extension.
inline YangResiduals yang_residuals(const HalfSpaceField& ue, const RadialFunction& u, double n, double s,
                                    ProbeSet probes = {}) {
    detail::require_extension_order(n, s, "yang_residuals");
    ue.validate();
    const HalfSpaceField d1 = delta_b_apply(ue, n);
    const HalfSpaceField d2 = delta_b_apply(d1, n);
    YangResiduals out;
    const std::size_t nr = ue.nr(), ny = ue.ny();
    for (std::size_t i = 2; i + 3 < nr; ++i)
        for (std::size_t j = 3; j + 3 < ny; ++j) {
            const double R = std::hypot(ue.rho[i], ue.y[j]);
            if (R < probes.r_lo || R > probes.r_hi || std::atan2(ue.y[j], ue.rho[i]) < probes.min_angle) continue;
            out.interior = std::max(out.interior, std::abs(d2.at(i, j)) * R * R * R * R);
        }

    const double b = 3.0 - 2.0 * s, p = 4.0 - 2.0 * s;
    std::vector<double> src, eu;
    for (std::size_t i = 0; i + 1 < nr; ++i) {
        const double rho = ue.rho[i];
        if (rho < probes.rho_lo || rho > probes.rho_hi) continue;
        double yv[3], g[3], h[3], yh[3];
        for (int k = 0; k < 3; ++k) {
            yv[k] = ue.y[1 + k];
            g[k] = std::pow(yv[k], b) * d_dy(ue, i, 1 + k);
            yh[k] = ue.y[2 + k];
            h[k] = std::pow(yh[k], b) * d_dy(d1, i, 2 + k);
        }
        out.neumann = std::max(out.neumann, std::abs(detail::extrapolate_to_zero(yv, g, p)));
        src.push_back(detail::extrapolate_to_zero(yh, h, p));
        eu.push_back(std::exp(u(rho)));
    }
    detail::require(!src.empty(), "yang_residuals: no boundary probes inside the grid");

    double num = 0, den = 0, smax = 0, emin = eu.front(), emax = eu.front();
    for (std::size_t k = 0; k < src.size(); ++k) {
        num += src[k] * eu[k];
        den += eu[k] * eu[k];
        smax = std::max(smax, std::abs(src[k]));
        emin = std::min(emin, eu[k]);
        emax = std::max(emax, eu[k]);
    }
    if (smax < 1e-8 && emax - emin <= 1e-12 * emax) {
        out.note = "source shape test skipped: e^u is constant and the source vanishes";
        return out;
    }
    const double C = num / den;
    double dev = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < src.size(); ++k) {
        dev = std::max(dev, std::abs(src[k] - C * eu[k]));
        scale = std::max(scale, std::abs(C * eu[k]));
    }
    out.source_constant = C;
    out.source = scale > 0.0 ? dev / scale : dev;
    return out;
}

// ---------------------------------------------------------------- energy

struct FractionalEnergyBreakdown {
    double bulk = 0;               // r^{2s-n} int 1/2 y^{3-2s} |Delta_b u_e|^2
    double boundary_potential = 0; // -C r^{2s-n} int_{B_r} e^u
    double boundary_sq = 0;        // -2 r^{2s-1-n} int y^{3-2s} (d_r u_e + 2s/r)^2
    double d_dr_sq = 0;            // 1/2 r^3 d/dr [ r^{2s-3-n} int y^{3-2s} (d_r u_e + 2s/r)^2 ]
    double log_term = 0;           // -4s(2s-2-n) r^{2s-3-n} int y^{3-2s} (u_e + 2s log r)
    double linear_term = 0;        // -2s(2s-2-n) r^{2s-2-n} int y^{3-2s} (d_r u_e + 2s/r)
    double tangential_d_dr = 0;    // 1/2 d/dr [ r^{2s-n} int y^{3-2s} |grad_T u_e|^2 ]
    double tangential = 0;         // 1/2 r^{2s-n-1} int y^{3-2s} |grad_T u_e|^2
    double total = 0;
};

/// Relative step of the centered differences in the d/dr terms.
inline constexpr double kEnergyStep = 0.05;

class FractionalEnergy {
public:
    FractionalEnergy(const HalfSpaceField& ue, double n, double s, std::optional<double> source_constant = {})
        : ue_(ue), lap_(delta_b_apply(ue, n)), n_(n), s_(s), omega_(sphere_area(n)),
          C_(source_constant ? *source_constant : extension_source_norm(s)), rule_(quad::gauss_legendre(16, 0.0, 1.0)) {
        detail::require_extension_order(n, s, "energy_fractional");
        r_floor_ = std::max(2.0 * ue_.rho[1], 4.0 * ue_.y.front());
    }

    double source_constant() const { return C_; }

    FractionalEnergyBreakdown at(double r) const {
        const double r_hi = r * (1.0 + kEnergyStep);
        if (!(r * (1.0 - kEnergyStep) > 2.0 * r_floor_ && r_hi < ue_.rho[ue_.nr() - 3] && r_hi < ue_.y[ue_.ny() - 3])) {
            std::ostringstream os;
            os << "energy_fractional: lambda=" << r << " lacks stencil margins inside the field grid";
            throw DomainError(os.str());
        }
        const double n = n_, s = s_, tw = 2.0 * s;
        FractionalEnergyBreakdown e;
        e.bulk = std::pow(r, tw - n) * 0.5 * bulk_integral(r);
        e.boundary_potential = -std::pow(r, tw - n) * C_ * boundary_integral(r);
        const auto mid = sphere_terms(r);
        e.boundary_sq = -2.0 * std::pow(r, tw - 1.0 - n) * mid.sq;
        const double rm = r * (1.0 - kEnergyStep), rp = r * (1.0 + kEnergyStep);
        const auto lo = sphere_terms(rm), hi = sphere_terms(rp);
        e.d_dr_sq = 0.5 * r * r * r *
                    (std::pow(rp, tw - 3.0 - n) * hi.sq - std::pow(rm, tw - 3.0 - n) * lo.sq) / (rp - rm);
        e.log_term = -2.0 * tw * (tw - 2.0 - n) * std::pow(r, tw - 3.0 - n) * mid.log;
        e.linear_term = -tw * (tw - 2.0 - n) * std::pow(r, tw - 2.0 - n) * mid.lin;
        e.tangential_d_dr = 0.5 * (std::pow(rp, tw - n) * hi.tan - std::pow(rm, tw - n) * lo.tan) / (rp - rm);
        e.tangential = 0.5 * std::pow(r, tw - n - 1.0) * mid.tan;
        e.total = e.bulk + e.boundary_potential + e.boundary_sq + e.d_dr_sq + e.log_term + e.linear_term +
                  e.tangential_d_dr + e.tangential;
        return e;
    }

    /// Centered difference of the total at r(1 +- rel).
    double slope(double r, double rel = 0.01) const {
        const double h = rel * r;
        return (at(r + h).total - at(r - h).total) / (2.0 * h);
    }

    /// 2(n+1-2s) r^{2s-2-n} int y^{3-2s} (d_r u_e + 2s/r)^2, the lower bound for dE/dr.
    double slope_bound(double r) const {
        return 2.0 * (n_ + 1.0 - 2.0 * s_) * std::pow(r, 2.0 * s_ - 2.0 - n_) * sphere_terms(r).sq;
    }

private:
    struct SphereTerms {
        double sq = 0, lin = 0, log = 0, tan = 0;
    };

    // int over the half-sphere of radius r of y^{3-2s} g d sigma
    //   = omega r^n int_0^{pi/2} (r sin phi)^{3-2s} g cos^{n-1} phi dphi
    template <class G>
    double half_sphere(double r, G&& g) const {
        constexpr int kPanels = 8;
        double acc = 0.0;
        const double h = 0.5 * std::numbers::pi / kPanels;
        for (int p = 0; p < kPanels; ++p)
            for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
                const double phi = h * (p + rule_.nodes[k]);
                const double c = std::cos(phi), sn = std::sin(phi);
                acc += h * rule_.weights[k] * std::pow(r * sn, 3.0 - 2.0 * s_) * std::pow(c, n_ - 1.0) * g(c, sn);
            }
        return omega_ * std::pow(r, n_) * acc;
    }

    SphereTerms sphere_terms(double r) const {
        SphereTerms t;
        const double tw = 2.0 * s_;
        // one pass, four integrands
        constexpr int kPanels = 8;
        const double h = 0.5 * std::numbers::pi / kPanels;
        for (int p = 0; p < kPanels; ++p)
            for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
                const double phi = h * (p + rule_.nodes[k]);
                const double c = std::cos(phi), sn = std::sin(phi);
                const double rho = r * c, yy = r * sn;
                const double u = ue_.interp(rho, yy), ur = ue_.interp(rho, yy, 1, 0), uy = ue_.interp(rho, yy, 0, 1);
                const double g = c * ur + sn * uy + tw / r;
                const double tg = -sn * ur + c * uy;
                const double w = h * rule_.weights[k] * std::pow(yy, 3.0 - tw) * std::pow(c, n_ - 1.0);
                t.sq += w * g * g;
                t.lin += w * g;
                t.log += w * (u + tw * std::log(r));
                t.tan += w * tg * tg;
            }
        const double f = omega_ * std::pow(r, n_);
        t.sq *= f;
        t.lin *= f;
        t.log *= f;
        t.tan *= f;
        return t;
    }

    double bulk_density(double R) const {
        return half_sphere(R, [&](double c, double sn) {
            const double v = lap_.interp(R * c, R * sn);
            return v * v;
        });
    }

    // int_0^r bulk_density(R) dR; below r_floor_ the density is continued as a power law
    double bulk_integral(double r) const {
        std::vector<double> br{r_floor_};
        for (double x = 2.0 * r_floor_; x < r; x *= 2.0) br.push_back(x);
        br.push_back(r);
        double acc = 0.0;
        for (std::size_t p = 0; p + 1 < br.size(); ++p)
            for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
                const double R = br[p] + (br[p + 1] - br[p]) * rule_.nodes[k];
                acc += (br[p + 1] - br[p]) * rule_.weights[k] * bulk_density(R);
            }
        const double d0 = bulk_density(r_floor_), d1 = bulk_density(2.0 * r_floor_);
        if (d0 > 0.0 && d1 > 0.0) {
            const double pw = std::log(d1 / d0) / std::log(2.0);
            if (pw > -1.0) acc += d0 * r_floor_ / (pw + 1.0);
        }
        return acc;
    }

    // omega int_0^r e^{u(rho)} rho^{n-1} drho
    double boundary_integral(double r) const {
        constexpr int kPanels = 16;
        const double h = r / kPanels;
        double acc = 0.0;
        for (int p = 0; p < kPanels; ++p)
            for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
                const double rho = h * (p + rule_.nodes[k]);
                acc += h * rule_.weights[k] * std::exp(ue_.boundary(rho)) * std::pow(rho, n_ - 1.0);
            }
        return omega_ * acc;
    }

    HalfSpaceField ue_;
    HalfSpaceField lap_;
    double n_, s_, omega_, C_;
    quad::Rule rule_;
    double r_floor_;
};

inline FractionalEnergyBreakdown energy_fractional(const HalfSpaceField& ue, double n, double s, double lambda,
                                                   std::optional<double> source_constant = {}) {
    return FractionalEnergy(ue, n, s, source_constant).at(lambda);
}

// ---------------------------------------------------------------- standard boundary data

/// u_{n,s} = -2s log r + log A_{n,s}.
inline RadialFunction singular_solution(double n, double s) {
    return log_family(s, std::log(nonlinear_coefficient({n, s})));
}

}  // namespace glab
