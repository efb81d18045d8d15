// glab: command-line front end for the laboratory.

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "glab/acceptance.hpp"
#include "glab/glab.hpp"
#include "table.hpp"

using namespace glab;
using cli::Table;

namespace {

enum Exit { kOk = 0, kDomain = 2, kNoConvergence = 3, kIo = 4 };

struct Common {
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", c.out, "output path (default stdout)");
}

RadialFunction boundary_data(const std::string& kind, double n, double s) {
    if (kind == "singular") return singular_solution(n, s);
    if (kind == "zero") return constant_function(0.0);
    if (kind == "bump") return bump_function(1.0, 1.0);
    throw DomainError("unknown boundary data '" + kind + "' (singular|zero|bump)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the fractional Gelfand-Liouville stability theory"};
    app.require_subcommand(1);
    std::function<void()> action;

    // constants
    Common c_const;
    double k_n = 10, k_s = 1.5;
    auto* constants = app.add_subcommand("constants", "sharp constants at (n, s)");
    constants->add_option("--n", k_n)->required();
    constants->add_option("--s", k_s)->required();
    add_common(constants, c_const);
    constants->callback([&] {
        action = [&] {
            const auto b = constant_bundle({k_n, k_s});
            Table t{{"name", "value"}, {}, {k_n, k_s, {}}};
            t.add({cli::text("hardy_constant"), cli::num(b.hardy)});
            t.add({cli::text("nonlinear_coefficient"), cli::num(b.coeff)});
            if (b.frac_lap_norm) t.add({cli::text("frac_lap_norm"), cli::num(*b.frac_lap_norm)});
            t.add({cli::text("poisson_norm"), cli::num(b.poisson_norm)});
            if (b.neumann_norm) t.add({cli::text("neumann_norm"), cli::num(*b.neumann_norm)});
            if (k_s > 1.0 && k_s < 2.0) t.add({cli::text("extension_source_norm"), cli::num(extension_source_norm(k_s))});
            t.add({cli::text("b"), cli::num(b.b)});
            cli::emit(t, c_const.format, c_const.out);
        };
    });

    // critdim
    Common c_crit;
    double cr_s = 1.0, cr_tol = 1e-12;
    auto* critdim = app.add_subcommand("critdim", "critical dimension n0(s)");
    critdim->add_option("--s", cr_s)->required();
    critdim->add_option("--tol", cr_tol);
    add_common(critdim, c_crit);
    critdim->callback([&] {
        action = [&] {
            const auto r = critical_dimension(cr_s, cr_tol);
            Table t{{"s", "n0", "residual", "iterations"}, {}, {{}, cr_s, cr_tol}};
            t.add({cli::num(cr_s), cli::num(r.root, "%.6f"), cli::num(r.residual, "%.3e"),
                   cli::integer(static_cast<long long>(r.iterations))});
            cli::emit(t, c_crit.format, c_crit.out);
        };
    });

    Common c_curve;
    double cv_lo = 1.0, cv_hi = 2.0, cv_tol = 1e-12;
    std::size_t cv_steps = 21;
    auto* curve = app.add_subcommand("critdim-curve", "n0(s) on an even grid of s");
    curve->add_option("--s-min", cv_lo);
    curve->add_option("--s-max", cv_hi);
    curve->add_option("--steps", cv_steps);
    curve->add_option("--tol", cv_tol);
    add_common(curve, c_curve);
    curve->callback([&] {
        action = [&] {
            Table t{{"s", "n0", "residual", "iterations"}, {}, {{}, {}, cv_tol}};
            for (const auto& p : critical_curve(cv_lo, cv_hi, cv_steps, cv_tol))
                t.add({cli::num(p.s), cli::num(p.root.root, "%.6f"), cli::num(p.root.residual, "%.3e"),
                       cli::integer(static_cast<long long>(p.root.iterations))});
            cli::emit(t, c_curve.format, c_curve.out);
        };
    });

    Common c_quart;
    auto* quartic = app.add_subcommand("quartic", "largest root of n^2(n-4) - 128(n-2)");
    add_common(quartic, c_quart);
    quartic->callback([&] {
        action = [&] {
            const auto r = fourth_order_threshold();
            Table t{{"n0", "residual", "iterations"}, {}, {{}, 2.0, {}}};
            t.add({cli::num(r.root, "%.10f"), cli::num(r.residual, "%.3e"), cli::integer(static_cast<long long>(r.iterations))});
            cli::emit(t, c_quart.format, c_quart.out);
        };
    });

    // exponents
    Common c_exp;
    std::optional<double> ex_n, ex_s;
    std::vector<double> ex_alpha;
    auto* exponents = app.add_subcommand("exponents", "cubic roots, terminal exponents, delta samples");
    exponents->add_option("--n", ex_n);
    exponents->add_option("--s", ex_s);
    exponents->add_option("--alpha-list", ex_alpha, "sample delta(alpha)")->delimiter(',');
    add_common(exponents, c_exp);
    exponents->callback([&] {
        action = [&] {
            const auto r = moser_cubic_roots();
            Table t{{"name", "value"}, {}, {ex_n, ex_s, {}}};
            t.add({cli::text("alpha_sharp"), cli::num(r.alpha_sharp)});
            t.add({cli::text("alpha_star"), cli::num(r.alpha_star)});
            t.add({cli::text("alpha_neg"), cli::num(r.alpha_neg)});
            if (ex_n && ex_s) {
                if (*ex_s >= 1.0 && *ex_s < 2.0)
                    t.add({cli::text("alpha_bar_fractional"), cli::num(alpha_bar(*ex_n, *ex_s, Flavor::fractional))});
                if (*ex_n > 4.0) t.add({cli::text("alpha_bar_local"), cli::num(alpha_bar(*ex_n, *ex_s, Flavor::local))});
            }
            for (double a : ex_alpha) t.add({cli::text("delta(" + cli::format_double(a, "%g") + ")"), cli::num(delta_gap(a))});
            cli::emit(t, c_exp.format, c_exp.out);
        };
    });

    Common c_lad;
    double ld_n = 10, ld_s = 1.5, ld_target = 2.0;
    std::string ld_flavor = "fractional";
    auto* ladder = app.add_subcommand("ladder", "bootstrap exponent ladder");
    ladder->add_option("--n", ld_n)->required();
    ladder->add_option("--s", ld_s)->required();
    ladder->add_option("--target", ld_target)->required();
    ladder->add_option("--flavor", ld_flavor)->check(CLI::IsMember({"fractional", "local"}));
    add_common(ladder, c_lad);
    ladder->callback([&] {
        action = [&] {
            const auto tr = bootstrap_ladder(ld_n, ld_s, ld_target, ld_flavor == "local" ? Flavor::local : Flavor::fractional);
            Table t{{"step", "alpha", "rule"}, {}, {ld_n, ld_s, {}}};
            for (std::size_t i = 0; i < tr.steps.size(); ++i)
                t.add({cli::integer(static_cast<long long>(i)), cli::num(tr.steps[i].exponent), cli::text(to_string(tr.steps[i].rule))});
            cli::emit(t, c_lad.format, c_lad.out);
        };
    });

    // fraclap
    auto* fraclap = app.add_subcommand("fraclap", "radial fractional Laplacian");
    fraclap->require_subcommand(1);
    Common c_fl;
    double fl_n = 3, fl_t = 0.5, fl_rtol = 1e-5;
    std::vector<double> fl_r{0.5, 1.0, 2.0};
    auto* verify = fraclap->add_subcommand("verify-log", "(-Delta)^t of -2t log r against A_{n,t} r^{-2t}");
    verify->add_option("--n", fl_n)->required();
    verify->add_option("--t", fl_t)->required();
    verify->add_option("--r", fl_r, "radii")->delimiter(',');
    verify->add_option("--rtol", fl_rtol);
    add_common(verify, c_fl);
    verify->callback([&] {
        action = [&] {
            const auto u = log_family(fl_t);
            const double A = nonlinear_coefficient({fl_n, fl_t});
            Table t{{"r", "value", "reference", "rel_error"}, {}, {fl_n, fl_t, fl_rtol}};
            for (double r : fl_r) {
                const double v = radial_frac_lap(u, fl_n, fl_t, r, fl_rtol), ref = A * std::pow(r, -2.0 * fl_t);
                t.add({cli::num(r), cli::num(v), cli::num(ref), cli::num(std::abs(v - ref) / std::abs(ref), "%.3e")});
            }
            cli::emit(t, c_fl.format, c_fl.out);
        };
    });

    Common c_hi;
    double hi_n = 10, hi_s = 1.5, hi_rtol = 1e-6;
    auto* hardy = app.add_subcommand("hardy-integral", "Fall double-integral representation of the Hardy constant");
    hardy->add_option("--n", hi_n)->required();
    hardy->add_option("--s", hi_s)->required();
    hardy->add_option("--rtol", hi_rtol);
    add_common(hardy, c_hi);
    hardy->callback([&] {
        action = [&] {
            const double v = fall_hardy_integral(hi_n, hi_s, hi_rtol), ref = hardy_constant({hi_n, hi_s});
            Table t{{"n", "s", "value", "reference", "rel_error"}, {}, {hi_n, hi_s, hi_rtol}};
            t.add({cli::num(hi_n), cli::num(hi_s), cli::num(v), cli::num(ref), cli::num(std::abs(v - ref) / std::abs(ref), "%.3e")});
            cli::emit(t, c_hi.format, c_hi.out);
        };
    });

    // stability
    auto* stability = app.add_subcommand("stability", "stability comparisons");
    stability->require_subcommand(1);
    Common c_hom;
    double sh_n = 10, sh_s = 1.5;
    std::optional<double> sh_tau;
    auto* hom = stability->add_subcommand("homogeneous", "Lambda |S| against int e^tau");
    hom->add_option("--n", sh_n)->required();
    hom->add_option("--s", sh_s)->required();
    hom->add_option("--tau-const", sh_tau, "constant tau (default: log A_{n,s})");
    add_common(hom, c_hom);
    hom->callback([&] {
        action = [&] {
            const auto r = sh_tau ? homogeneous_comparison(sh_n, sh_s, *sh_tau) : singular_comparison(sh_n, sh_s);
            Table t{{"n", "s", "lhs_coeff", "rhs_coeff", "stable_possible"}, {}, {sh_n, sh_s, {}}};
            t.add({cli::num(sh_n), cli::num(sh_s), cli::num(r.lhs_coeff), cli::num(r.rhs_coeff), cli::flag(r.stable_possible)});
            cli::emit(t, c_hom.format, c_hom.out);
        };
    });

    Common c_rel;
    double sr_n = 12;
    std::vector<double> sr_eps{0.02, 0.01, 0.005, 0.0025};
    auto* rel = stability->add_subcommand("rellich", "Hardy-Rellich quadratic form on the cutoff family");
    rel->add_option("--n", sr_n)->required();
    rel->add_option("--eps", sr_eps)->delimiter(',');
    add_common(rel, c_rel);
    rel->callback([&] {
        action = [&] {
            const auto r = rellich_family_sign(sr_n, sr_eps);
            Table t{{"epsilon", "q", "slope", "normalized_slope", "sign"}, {}, {sr_n, 2.0, {}}};
            for (const auto& smp : r.samples)
                t.add({cli::num(smp.epsilon), cli::num(smp.value), cli::num(r.slope), cli::num(r.normalized_slope),
                       cli::integer(r.sign)});
            cli::emit(t, c_rel.format, c_rel.out);
        };
    });

    Common c_cut;
    std::vector<double> sc_eps{0.1, 0.01, 0.001};
    double sc_width = 1.0;
    auto* cut = stability->add_subcommand("cutoff", "log-coefficient of the cutoff integral");
    cut->add_option("--eps", sc_eps)->delimiter(',');
    cut->add_option("--width", sc_width);
    add_common(cut, c_cut);
    cut->callback([&] {
        action = [&] {
            const auto r = cutoff_log_coefficient(sc_eps, sc_width);
            Table t{{"epsilon", "integral", "slope", "intercept"}, {}, {}};
            for (const auto& smp : r.samples)
                t.add({cli::num(smp.epsilon), cli::num(smp.value), cli::num(r.slope), cli::num(r.intercept)});
            cli::emit(t, c_cut.format, c_cut.out);
        };
    });

    // biharmonic
    auto* bih = app.add_subcommand("biharmonic", "fourth-order radial problem");
    bih->require_subcommand(1);
    Common c_sh;
    double bs_n = 13, bs_a = 0, bs_b = 1, bs_rmax = 1e3;
    std::vector<double> bs_bisect;
    std::string bs_profile_out;
    auto* shoot = bih->add_subcommand("shoot", "shoot from the origin with u(0)=a, Delta u(0)=b");
    shoot->add_option("--n", bs_n)->required();
    shoot->add_option("--a", bs_a);
    shoot->add_option("--b", bs_b);
    shoot->add_option("--bisect-b", bs_bisect, "lo,hi: bisect on b for the entire-like threshold")->delimiter(',')->expected(2);
    shoot->add_option("--rmax", bs_rmax);
    shoot->add_option("--profile-out", bs_profile_out, "write the profile as r,u");
    add_common(shoot, c_sh);
    shoot->callback([&] {
        action = [&] {
            const auto res = bs_bisect.size() == 2 ? shoot_bisect(bs_n, bs_a, bs_bisect[0], bs_bisect[1], bs_rmax)
                                                   : shoot_radial(bs_n, bs_a, bs_b, bs_rmax);
            if (!bs_profile_out.empty()) write_profile_csv(res.profile, bs_profile_out);
            Table t{{"n", "a", "b", "outcome", "r_star", "r_end"}, {}, {bs_n, 2.0, {}}};
            t.add({cli::num(bs_n), cli::num(bs_a), cli::num(bs_b = res.b, "%.13g"), cli::text(to_string(res.outcome)),
                   cli::num(res.r_star), cli::num(res.profile.r_max())});
            cli::emit(t, c_sh.format, c_sh.out);
        };
    });

    Common c_be;
    double be_n = 13;
    std::string be_profile;
    std::vector<double> be_r{1, 2, 4};
    auto* benergy = bih->add_subcommand("energy", "E(r) with its terms and the derivative bound");
    benergy->add_option("--n", be_n)->required();
    benergy->add_option("--profile", be_profile, "CSV r,u")->required();
    benergy->add_option("--r-list", be_r)->delimiter(',');
    add_common(benergy, c_be);
    benergy->callback([&] {
        action = [&] {
            const auto u = read_profile_csv(be_profile);
            Table t{{"r", "bulk_dirichlet", "bulk_potential", "boundary_sq", "d_dr_sq_term", "log_term", "radial_deriv_term",
                     "tangential_1", "tangential_2", "total", "slope", "bound"},
                    {},
                    {be_n, 2.0, {}}};
            for (double r : be_r) {
                const auto e = energy_local(u, be_n, r);
                t.add({cli::num(r), cli::num(e.bulk_dirichlet), cli::num(e.bulk_potential), cli::num(e.boundary_sq),
                       cli::num(e.d_dr_sq_term), cli::num(e.log_term), cli::num(e.radial_deriv_term),
                       cli::num(e.tangential_terms[0]), cli::num(e.tangential_terms[1]), cli::num(e.total),
                       cli::num(energy_local_slope(u, be_n, r)), cli::num(energy_local_bound(u, be_n, r))});
            }
            cli::emit(t, c_be.format, c_be.out);
        };
    });

    Common c_br;
    double br_n = 12;
    std::string br_profile, br_u;
    auto* bres = bih->add_subcommand("residual", "max |Delta^2 u - e^u| r^4 over the profile grid");
    bres->add_option("--n", br_n)->required();
    auto* br_popt = bres->add_option("--profile", br_profile, "CSV r,u");
    bres->add_option("--u", br_u, "singular|zero")->check(CLI::IsMember({"singular", "zero"}))->excludes(br_popt);
    add_common(bres, c_br);
    bres->callback([&] {
        action = [&] {
            RadialProfile u = [&] {
                if (!br_profile.empty()) return read_profile_csv(br_profile);
                const auto g = log_grid(0.1, 10.0);
                if (br_u == "zero") return RadialProfile(g, std::vector<double>(g.size(), 0.0));
                if (br_u == "singular") return singular_profile(br_n, g);
                throw DomainError("biharmonic residual: give --profile or --u");
            }();
            Table t{{"n", "residual"}, {}, {br_n, 2.0, {}}};
            t.add({cli::num(br_n), cli::num(radial_bilaplacian_residual(u, br_n), "%.6e")});
            cli::emit(t, c_br.format, c_br.out);
        };
    });

    // extension
    auto* ext = app.add_subcommand("extension", "order-s Poisson extension and fractional energy");
    ext->require_subcommand(1);
    double ex_rho_max = 3.0, ex_y_min = 1e-3, ex_y_max = 3.0;
    std::size_t ex_nr = 121, ex_ny = 121;
    auto add_grid = [&](CLI::App* a) {
        a->add_option("--rho-max", ex_rho_max);
        a->add_option("--n-rho", ex_nr);
        a->add_option("--y-min", ex_y_min);
        a->add_option("--y-max", ex_y_max);
        a->add_option("--n-y", ex_ny);
    };
    double eb_n = 10, eb_s = 1.5;
    std::string eb_u = "singular", eb_out;
    auto* ebuild = ext->add_subcommand("build", "extend boundary data to the half-space grid");
    ebuild->add_option("--n", eb_n)->required();
    ebuild->add_option("--s", eb_s)->required();
    ebuild->add_option("--u", eb_u)->check(CLI::IsMember({"singular", "zero", "bump"}));
    ebuild->add_option("--out", eb_out, "field CSV rho,y,value")->required();
    add_grid(ebuild);
    ebuild->callback([&] {
        action = [&] {
            const auto grid = make_half_space_grid(ex_rho_max, ex_nr, ex_y_min, ex_y_max, ex_ny, 3.0 - 2.0 * eb_s);
            const auto f = poisson_extend(boundary_data(eb_u, eb_n, eb_s), eb_n, eb_s, grid);
            write_field_csv(f, eb_out, cli::meta_line({eb_n, eb_s, {}}));
        };
    });

    Common c_ee;
    double ee_n = 10, ee_s = 1.5;
    std::string ee_field;
    std::vector<double> ee_lambda{1, 2};
    auto* eenergy = ext->add_subcommand("energy", "fractional E(lambda) on a field file");
    eenergy->add_option("--field", ee_field)->required();
    eenergy->add_option("--n", ee_n)->required();
    eenergy->add_option("--s", ee_s)->required();
    eenergy->add_option("--lambda-list", ee_lambda)->delimiter(',');
    add_common(eenergy, c_ee);
    eenergy->callback([&] {
        action = [&] {
            const FractionalEnergy E(read_field_csv(ee_field, 3.0 - 2.0 * ee_s), ee_n, ee_s);
            Table t{{"lambda", "bulk", "boundary_potential", "boundary_sq", "d_dr_sq", "log_term", "linear_term",
                     "tangential_d_dr", "tangential", "total", "bound"},
                    {},
                    {ee_n, ee_s, {}}};
            for (double l : ee_lambda) {
                const auto e = E.at(l);
                t.add({cli::num(l), cli::num(e.bulk), cli::num(e.boundary_potential), cli::num(e.boundary_sq),
                       cli::num(e.d_dr_sq), cli::num(e.log_term), cli::num(e.linear_term), cli::num(e.tangential_d_dr),
                       cli::num(e.tangential), cli::num(e.total), cli::num(E.slope_bound(l))});
            }
            cli::emit(t, c_ee.format, c_ee.out);
        };
    });

    Common c_er;
    double er_n = 5, er_s = 1.5;
    std::string er_u = "bump";
    auto* eres = ext->add_subcommand("residuals", "residuals of the extended boundary system");
    eres->add_option("--n", er_n)->required();
    eres->add_option("--s", er_s)->required();
    eres->add_option("--u", er_u)->check(CLI::IsMember({"singular", "zero", "bump"}));
    add_grid(eres);
    add_common(eres, c_er);
    eres->callback([&] {
        action = [&] {
            const auto u = boundary_data(er_u, er_n, er_s);
            const auto f = poisson_extend(u, er_n, er_s, make_half_space_grid(ex_rho_max, ex_nr, ex_y_min, ex_y_max, ex_ny, 0.0));
            const auto r = yang_residuals(f, u, er_n, er_s);
            const double nan = std::nan("");
            Table t{{"interior", "neumann", "source", "source_constant", "note"}, {}, {er_n, er_s, {}}};
            t.add({cli::num(r.interior, "%.6e"), cli::num(r.neumann, "%.6e"), cli::num(r.source.value_or(nan), "%.6e"),
                   cli::num(r.source_constant.value_or(nan)), cli::text(r.note)});
            cli::emit(t, c_er.format, c_er.out);
        };
    });

    // acceptance
    std::vector<int> ac_only;
    bool ac_failed = false;
    auto* acc = app.add_subcommand("acceptance", "run the acceptance suite and print a pass/fail table");
    acc->add_option("--only", ac_only, "criterion ids")->delimiter(',');
    acc->callback([&] {
        action = [&] {
            std::setvbuf(stdout, nullptr, _IOLBF, 0);
            const auto rows = acceptance::run(ac_only, [](const acceptance::Result& r) {
                std::cout << acceptance::format_row(r) << std::endl;
            });
            int passed = 0;
            for (const auto& r : rows) passed += r.pass();
            std::cout << passed << "/" << rows.size() << " criteria passed; " << rows.size() << " criteria evaluated" << std::endl;
            ac_failed = passed != static_cast<int>(rows.size());
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kDomain;
    }
    try {
        action();
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomain;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    }
    return ac_failed ? kNoConvergence : kOk;
}
