#pragma once

// RadialProfile: a radial function on a log-spaced grid with derivatives up
// to order four. Derivatives come, in order of preference, from an analytic
// jet, from stored exact derivative columns, or from 9-point Fornberg
// stencils on the values.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "glab/errors.hpp"

namespace glab {

/// u and its first four r-derivatives at one radius.
struct RadialJet {
    double u = 0, d1 = 0, d2 = 0, d3 = 0, d4 = 0;

    double operator[](int k) const {
        switch (k) {
            case 0: return u;
            case 1: return d1;
            case 2: return d2;
            case 3: return d3;
            default: return d4;
        }
    }
};

/// Regular data at r = 0: u(0) = a, Delta u(0) = b (u'(0) = (Delta u)'(0) = 0).
struct OriginData {
    double a;
    double b;
};

/// Radii from r_min to r_max, `per_decade` intervals per factor of ten.
inline std::vector<double> log_grid(double r_min, double r_max, int per_decade = 200) {
    detail::require(r_min > 0.0 && r_max > r_min, "log_grid: need 0 < r_min < r_max");
    detail::require(per_decade >= 2, "log_grid: per_decade must be >= 2");
    const double span = std::log10(r_max / r_min);
    const int count = std::max(8, static_cast<int>(std::ceil(span * per_decade)));
    std::vector<double> g(count + 1);
    for (int i = 0; i <= count; ++i) g[i] = r_min * std::pow(10.0, span * i / count);
    g.back() = r_max;
    return g;
}

/// Finite-difference weights (Fornberg 1988) for derivatives 0..m at z from
/// nodes x[0..N). Result indexed w[k * N + j].
inline std::vector<double> fornberg_weights(double z, const double* x, int N, int m) {
    std::vector<double> c(static_cast<std::size_t>((m + 1) * N), 0.0);
    auto at = [&](int j, int k) -> double& { return c[static_cast<std::size_t>(k * N + j)]; };
    double c1 = 1.0, c4 = x[0] - z;
    at(0, 0) = 1.0;
    for (int i = 1; i < N; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i] - z;
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) at(i, k) = c1 * (k * at(i - 1, k - 1) - c5 * at(i - 1, k)) / c2;
                at(i, 0) = -c1 * c5 * at(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) at(j, k) = (c4 * at(j, k) - k * at(j, k - 1)) / c3;
            at(j, 0) = c4 * at(j, 0) / c3;
        }
        c1 = c2;
    }
    return c;
}

class RadialProfile {
public:
    static constexpr int kStencil = 9;
    using Jet = std::function<RadialJet(double)>;

    RadialProfile() = default;

    RadialProfile(std::vector<double> grid, std::vector<double> values) : r_(std::move(grid)), u_(std::move(values)) {
        detail::require(r_.size() == u_.size(), "RadialProfile: grid and values differ in length");
        detail::require(r_.size() >= static_cast<std::size_t>(kStencil), "RadialProfile: need at least 9 grid points");
        detail::require(r_.front() > 0.0, "RadialProfile: radii must be positive");
        for (std::size_t i = 1; i < r_.size(); ++i)
            detail::require(r_[i] > r_[i - 1], "RadialProfile: grid must be strictly increasing");
        for (double v : u_) detail::require(std::isfinite(v), "RadialProfile: non-finite value");
    }

    /// Profile sampled from an exact jet; derivatives are taken from the jet.
    static RadialProfile from_jet(std::vector<double> grid, Jet jet) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) v[i] = jet(grid[i]).u;
        RadialProfile p(std::move(grid), std::move(v));
        p.jet_ = std::move(jet);
        return p;
    }

    const std::vector<double>& grid() const { return r_; }
    const std::vector<double>& values() const { return u_; }
    double r_min() const { return r_.front(); }
    double r_max() const { return r_.back(); }
    bool has_jet() const { return static_cast<bool>(jet_); }

    /// Exact k-th derivative at the grid nodes, k in 1..4.
    void set_column(int k, std::vector<double> col) {
        detail::require(k >= 1 && k <= 4, "RadialProfile: column order must be 1..4");
        detail::require(col.size() == r_.size(), "RadialProfile: column length mismatch");
        cols_[k] = std::move(col);
    }
    bool has_column(int k) const { return k >= 1 && k <= 4 && !cols_[k].empty(); }
    const std::vector<double>& column(int k) const { return cols_[k]; }

    /// Cumulative bulk integrals int_0^r (1/2 (Delta u)^2) rho^{n-1} and
    /// int_0^r e^u rho^{n-1} at the nodes, for dimension n (no sphere factor).
    void set_bulk(double n, std::vector<double> dirichlet, std::vector<double> potential) {
        detail::require(dirichlet.size() == r_.size() && potential.size() == r_.size(),
                        "RadialProfile: bulk column length mismatch");
        bulk_n_ = n;
        bulk_dir_ = std::move(dirichlet);
        bulk_pot_ = std::move(potential);
    }
    std::optional<double> bulk_dimension() const { return bulk_n_; }
    const std::vector<double>& bulk_dirichlet() const { return bulk_dir_; }
    const std::vector<double>& bulk_potential() const { return bulk_pot_; }

    /// Tags the profile as log-type near the origin: u ~ -4 log r + log A below r_min.
    void set_singular_core(double A) { core_A_ = A; }
    std::optional<double> singular_core() const { return core_A_; }

    void set_origin(OriginData d) { origin_ = d; }
    std::optional<OriginData> origin() const { return origin_; }

    /// k-th derivative (0..4) at r in [r_min, r_max].
    double derivative(double r, int k) const {
        detail::require(k >= 0 && k <= 4, "RadialProfile: derivative order must be 0..4");
        check_inside(r);
        if (jet_) return jet_(r)[k];
        int base = 0;
        for (int j = k; j >= 1; --j)
            if (has_column(j)) {
                base = j;
                break;
            }
        const std::vector<double>& src = base == 0 ? u_ : cols_[base];
        return stencil(r, src, k - base);
    }

    RadialJet jet(double r) const {
        if (jet_) {
            check_inside(r);
            return jet_(r);
        }
        return {derivative(r, 0), derivative(r, 1), derivative(r, 2), derivative(r, 3), derivative(r, 4)};
    }

    double value(double r) const { return derivative(r, 0); }

    /// Interpolated cumulative bulk integrals at r (requires set_bulk).
    std::pair<double, double> bulk_at(double r) const {
        detail::require(bulk_n_.has_value(), "RadialProfile: no bulk columns");
        check_inside(r);
        return {stencil(r, bulk_dir_, 0), stencil(r, bulk_pot_, 0)};
    }

    /// u^lambda(r) = u(lambda r) + 4 log lambda on the grid r_i / lambda.
    RadialProfile rescaled(double lambda) const {
        detail::require(lambda > 0.0, "rescale_profile: lambda must be > 0");
        RadialProfile out = *this;
        const double shift = 4.0 * std::log(lambda);
        for (auto& x : out.r_) x /= lambda;
        for (auto& v : out.u_) v += shift;
        for (int k = 1; k <= 4; ++k)
            for (auto& v : out.cols_[k]) v *= std::pow(lambda, k);
        if (bulk_n_) {
            const double f = std::pow(lambda, 4.0 - *bulk_n_);
            for (auto& v : out.bulk_dir_) v *= f;
            for (auto& v : out.bulk_pot_) v *= f;
        }
        if (jet_) {
            const Jet j = jet_;
            out.jet_ = [j, lambda, shift](double r) {
                const RadialJet a = j(lambda * r);
                const double l2 = lambda * lambda;
                return RadialJet{a.u + shift, lambda * a.d1, l2 * a.d2, l2 * lambda * a.d3, l2 * l2 * a.d4};
            };
        }
        if (origin_) out.origin_ = OriginData{origin_->a + shift, lambda * lambda * origin_->b};
        return out;
    }

private:
    void check_inside(double r) const {
        if (!(r >= r_.front() * (1.0 - 1e-12) && r <= r_.back() * (1.0 + 1e-12))) {
            std::ostringstream os;
            os << "RadialProfile: r=" << r << " outside grid [" << r_.front() << ", " << r_.back() << "]";
            throw DomainError(os.str());
        }
    }

    double stencil(double r, const std::vector<double>& f, int order) const {
        const auto it = std::lower_bound(r_.begin(), r_.end(), r);
        const long n = static_cast<long>(r_.size());
        long lo = static_cast<long>(it - r_.begin()) - kStencil / 2;
        lo = std::clamp(lo, 0L, n - kStencil);
        const auto w = fornberg_weights(r, r_.data() + lo, kStencil, order);
        double acc = 0.0;
        for (int j = 0; j < kStencil; ++j) acc += w[static_cast<std::size_t>(order * kStencil + j)] * f[lo + j];
        return acc;
    }

    std::vector<double> r_;
    std::vector<double> u_;
    std::array<std::vector<double>, 5> cols_{};
    std::optional<double> bulk_n_;
    std::vector<double> bulk_dir_, bulk_pot_;
    Jet jet_;
    std::optional<double> core_A_;
    std::optional<OriginData> origin_;
};

/// u^lambda(x) = u(lambda x) + 4 log lambda.
inline RadialProfile rescale_profile(const RadialProfile& u, double lambda) { return u.rescaled(lambda); }

// ---------------------------------------------------------------- CSV I/O (r,u)

inline void write_profile_csv(const RadialProfile& p, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open profile file for writing: " + path);
    os << "r,u\n" << std::setprecision(17);
    for (std::size_t i = 0; i < p.grid().size(); ++i) os << p.grid()[i] << ',' << p.values()[i] << '\n';
    if (!os) throw IoError("write failed: " + path);
}

inline RadialProfile read_profile_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open profile file: " + path);
    std::string line;
    while (std::getline(is, line) && (line.empty() || line[0] == '#')) {
    }
    if (line.rfind("r,u", 0) != 0) throw IoError("profile file must start with header 'r,u': " + path);
    std::vector<double> r, u;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        double a, b;
        char comma;
        if (!(ls >> a >> comma >> b) || comma != ',') throw IoError("malformed profile row: " + line);
        r.push_back(a);
        u.push_back(b);
    }
    return RadialProfile(std::move(r), std::move(u));
}

}  // namespace glab
