#pragma once

// Axisymmetric fields on the half-plane (rho, y), rho = |x| >= 0, y > 0, and
// the weighted operator Delta_b w = w_rhorho + (n-1)/rho w_rho + w_yy + (b/y) w_y.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "glab/errors.hpp"
#include "glab/profile.hpp"

namespace glab {

struct HalfSpaceField {
    std::vector<double> rho;     // increasing, rho[0] >= 0
    std::vector<double> y;       // increasing, y[0] > 0
    std::vector<double> values;  // values[i * y.size() + j] = u_e(rho[i], y[j])
    double b = 0.0;              // 3 - 2s
    std::vector<double> trace;   // optional boundary values u(rho[i])
    std::vector<unsigned char> valid;  // optional mask; 0 marks stencil-less nodes

    std::size_t nr() const { return rho.size(); }
    std::size_t ny() const { return y.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * y.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * y.size() + j]; }
    bool is_valid(std::size_t i, std::size_t j) const { return valid.empty() || valid[i * y.size() + j] != 0; }

    void validate() const {
        detail::require(rho.size() >= 5 && y.size() >= 5, "HalfSpaceField: need at least 5 points per direction");
        detail::require(values.size() == rho.size() * y.size(), "HalfSpaceField: value count mismatch");
        detail::require(rho.front() >= 0.0 && y.front() > 0.0, "HalfSpaceField: need rho >= 0 and y > 0");
        for (std::size_t i = 1; i < rho.size(); ++i)
            detail::require(rho[i] > rho[i - 1], "HalfSpaceField: rho grid must be strictly increasing");
        for (std::size_t j = 1; j < y.size(); ++j)
            detail::require(y[j] > y[j - 1], "HalfSpaceField: y grid must be strictly increasing");
        detail::require(trace.empty() || trace.size() == rho.size(), "HalfSpaceField: trace length mismatch");
        for (double v : values) detail::require(std::isfinite(v), "HalfSpaceField: non-finite value");
    }

    bool mirrored() const { return rho.front() == 0.0; }

    /// Tensor-product Lagrange interpolation (6 x 6 stencil) of d^{dr}_rho d^{dy}_y u_e,
    /// dr, dy in {0, 1}. rho < 0 is not accepted; near rho = 0 the field is
    /// continued evenly. y below y[0] is clamped to y[0].
    double interp(double r, double yy, int dr = 0, int dy = 0) const {
        constexpr int K = 6;
        yy = std::clamp(yy, y.front(), y.back());
        r = std::clamp(r, rho.front(), rho.back());
        // rho stencil, possibly reaching into mirrored nodes
        double xr[K];
        std::size_t ir[K];
        {
            const long nrl = static_cast<long>(rho.size());
            const long c = static_cast<long>(std::lower_bound(rho.begin(), rho.end(), r) - rho.begin());
            long lo = c - K / 2;
            const long min_lo = mirrored() ? -(K - 1) : 0;
            lo = std::clamp(lo, min_lo, nrl - K);
            for (int k = 0; k < K; ++k) {
                const long idx = lo + k;
                if (idx >= 0) {
                    xr[k] = rho[static_cast<std::size_t>(idx)];
                    ir[k] = static_cast<std::size_t>(idx);
                } else {
                    // even continuation: node -idx reflected through rho = 0
                    xr[k] = -rho[static_cast<std::size_t>(-idx)];
                    ir[k] = static_cast<std::size_t>(-idx);
                }
            }
        }
        double xy[K];
        std::size_t iy[K];
        {
            const long nyl = static_cast<long>(y.size());
            const long c = static_cast<long>(std::lower_bound(y.begin(), y.end(), yy) - y.begin());
            const long lo = std::clamp(c - K / 2, 0L, nyl - K);
            for (int k = 0; k < K; ++k) {
                xy[k] = y[static_cast<std::size_t>(lo + k)];
                iy[k] = static_cast<std::size_t>(lo + k);
            }
        }
        const auto wr = fornberg_weights(r, xr, K, 1);
        const auto wy = fornberg_weights(yy, xy, K, 1);
        double acc = 0.0;
        for (int a = 0; a < K; ++a) {
            double row = 0.0;
            for (int c = 0; c < K; ++c) row += wy[static_cast<std::size_t>(dy * K + c)] * at(ir[a], iy[c]);
            acc += wr[static_cast<std::size_t>(dr * K + a)] * row;
        }
        return acc;
    }

    /// Boundary value at rho: the stored trace if present, else the lowest row.
    double boundary(double r) const {
        if (trace.empty()) return interp(r, y.front());
        // 1D Lagrange on the trace
        constexpr int K = 6;
        r = std::clamp(r, rho.front(), rho.back());
        const long nrl = static_cast<long>(rho.size());
        const long c = static_cast<long>(std::lower_bound(rho.begin(), rho.end(), r) - rho.begin());
        const long lo = std::clamp(c - K / 2, 0L, nrl - K);
        const auto w = fornberg_weights(r, rho.data() + lo, K, 0);
        double acc = 0.0;
        for (int k = 0; k < K; ++k) acc += w[static_cast<std::size_t>(k)] * trace[static_cast<std::size_t>(lo + k)];
        return acc;
    }
};

/// Uniform rho grid on [0, rho_max] and geometric y grid on [y_min, y_max].
inline HalfSpaceField make_half_space_grid(double rho_max, std::size_t n_rho, double y_min, double y_max,
                                           std::size_t n_y, double b) {
    detail::require(n_rho >= 5 && n_y >= 5, "half-space grid: need at least 5 points per direction");
    detail::require(rho_max > 0.0 && y_min > 0.0 && y_max > y_min, "half-space grid: bad extents");
    HalfSpaceField f;
    f.b = b;
    for (std::size_t i = 0; i < n_rho; ++i) f.rho.push_back(rho_max * static_cast<double>(i) / (n_rho - 1));
    const double ratio = std::log(y_max / y_min);
    for (std::size_t j = 0; j < n_y; ++j) f.y.push_back(y_min * std::exp(ratio * static_cast<double>(j) / (n_y - 1)));
    f.y.back() = y_max;
    f.values.assign(n_rho * n_y, 0.0);
    return f;
}

namespace detail {

struct ThreePoint {
    double m, c, p;  // weights for f_{i-1}, f_i, f_{i+1}
};

inline ThreePoint d1_weights(double hm, double hp) {
    return {-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))};
}

inline ThreePoint d2_weights(double hm, double hp) {
    return {2.0 / (hm * (hm + hp)), -2.0 / (hm * hp), 2.0 / (hp * (hm + hp))};
}

}  // namespace detail

/// Delta_b on the tensor grid with three-point nonuniform stencils. At rho = 0
/// the even continuation gives Delta_x = n f_rhorho. Nodes without a full
/// stencil (last rho column, first and last y rows, rho[0] > 0 column) are
/// marked invalid and filled from the nearest valid node.
inline HalfSpaceField delta_b_apply(const HalfSpaceField& f, double n) {
    f.validate();
    detail::require(n >= 1.0, "delta_b_apply: dimension must be >= 1");
    HalfSpaceField g = f;
    g.trace.clear();
    const std::size_t nr = f.nr(), ny = f.ny();
    g.valid.assign(nr * ny, 0);
    for (std::size_t i = 0; i + 1 < nr; ++i) {
        if (i == 0 && !f.mirrored()) continue;
        for (std::size_t j = 1; j + 1 < ny; ++j) {
            double lap_x;
            if (i == 0) {
                const double h = f.rho[1];
                lap_x = n * 2.0 * (f.at(1, j) - f.at(0, j)) / (h * h);
            } else {
                const double hm = f.rho[i] - f.rho[i - 1], hp = f.rho[i + 1] - f.rho[i];
                const auto w1 = detail::d1_weights(hm, hp), w2 = detail::d2_weights(hm, hp);
                const double fm = f.at(i - 1, j), fc = f.at(i, j), fp = f.at(i + 1, j);
                lap_x = w2.m * fm + w2.c * fc + w2.p * fp + (n - 1.0) / f.rho[i] * (w1.m * fm + w1.c * fc + w1.p * fp);
            }
            const double hm = f.y[j] - f.y[j - 1], hp = f.y[j + 1] - f.y[j];
            const auto w1 = detail::d1_weights(hm, hp), w2 = detail::d2_weights(hm, hp);
            const double fm = f.at(i, j - 1), fc = f.at(i, j), fp = f.at(i, j + 1);
            const double lap_y = w2.m * fm + w2.c * fc + w2.p * fp + f.b / f.y[j] * (w1.m * fm + w1.c * fc + w1.p * fp);
            g.at(i, j) = lap_x + lap_y;
            g.valid[i * ny + j] = 1;
        }
    }
    // fill invalid nodes from the nearest valid one (by index)
    const std::size_t i_lo = f.mirrored() ? 0 : 1, i_hi = nr - 2;
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (!g.valid[i * ny + j]) g.at(i, j) = g.at(std::clamp(i, i_lo, i_hi), std::clamp<std::size_t>(j, 1, ny - 2));
    return g;
}

/// y-derivative at interior row j (three-point), for 1 <= j <= ny-2.
inline double d_dy(const HalfSpaceField& f, std::size_t i, std::size_t j) {
    const double hm = f.y[j] - f.y[j - 1], hp = f.y[j + 1] - f.y[j];
    const auto w = detail::d1_weights(hm, hp);
    return w.m * f.at(i, j - 1) + w.c * f.at(i, j) + w.p * f.at(i, j + 1);
}

// ---------------------------------------------------------------- CSV (rho,y,value)

/// Rows rho,y,value; the boundary trace, if any, is written as y = 0 rows.
inline void write_field_csv(const HalfSpaceField& f, const std::string& path, const std::string& meta = "") {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open field file for writing: " + path);
    if (!meta.empty()) os << meta << '\n';
    os << "rho,y,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < f.nr(); ++i) {
        if (!f.trace.empty()) os << f.rho[i] << ",0," << f.trace[i] << '\n';
        for (std::size_t j = 0; j < f.ny(); ++j) os << f.rho[i] << ',' << f.y[j] << ',' << f.at(i, j) << '\n';
    }
    if (!os) throw IoError("write failed: " + path);
}

inline HalfSpaceField read_field_csv(const std::string& path, double b) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open field file: " + path);
    std::string line;
    while (std::getline(is, line) && (line.empty() || line[0] == '#')) {
    }
    if (line.rfind("rho,y,value", 0) != 0) throw IoError("field file must start with header 'rho,y,value': " + path);
    std::map<double, std::map<double, double>> cells;
    std::map<double, double> trace;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double r, yy, v;
        char c1, c2;
        if (!(ls >> r >> c1 >> yy >> c2 >> v) || c1 != ',' || c2 != ',') throw IoError("malformed field row: " + line);
        if (yy == 0.0)
            trace[r] = v;
        else
            cells[r][yy] = v;
    }
    if (cells.empty()) throw IoError("field file has no data rows: " + path);
    HalfSpaceField f;
    f.b = b;
    for (const auto& [yy, v] : cells.begin()->second) {
        (void)v;
        f.y.push_back(yy);
    }
    for (const auto& [r, col] : cells) {
        if (col.size() != f.y.size()) throw IoError("field file is not a tensor grid: " + path);
        f.rho.push_back(r);
        for (const auto& [yy, v] : col) {
            (void)yy;
            f.values.push_back(v);
        }
    }
    if (!trace.empty()) {
        if (trace.size() != f.rho.size()) throw IoError("field file trace rows do not match the rho grid: " + path);
        for (const auto& [r, v] : trace) {
            (void)r;
            f.trace.push_back(v);
        }
    }
    try {
        f.validate();
    } catch (const DomainError& e) {
        throw IoError(std::string("invalid field file: ") + e.what());
    }
    return f;
}

}  // namespace glab
