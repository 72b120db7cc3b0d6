#include <CLI11.hpp>
#include <Eigen/Core>

#include <microrib/microrib.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace microrib;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_invalid = 1;
constexpr int exit_solver = 2;
constexpr int exit_usage = 64;

struct Common {
    std::string config;
    std::string out;
    std::vector<std::string> sets;
    std::string command_line;
};

enum class RegimeChoice { Auto, Critical, SubCritical, SuperCritical };

const std::map<std::string, FormulaSet> formula_names{{"corrected", FormulaSet::Corrected},
                                                      {"published", FormulaSet::Published}};
const std::map<std::string, RegimeChoice> regime_names{{"auto", RegimeChoice::Auto},
                                                       {"critical", RegimeChoice::Critical},
                                                       {"subcritical", RegimeChoice::SubCritical},
                                                       {"supercritical", RegimeChoice::SuperCritical}};
const std::map<std::string, RibletKind> riblet_names{
    {"vshape", RibletKind::VShape}, {"ushape", RibletKind::UShape}, {"blade", RibletKind::Blade}};

FluidWallParams load_params(const Common& c)
{
    std::map<std::string, double> kv;
    if (!c.config.empty())
        kv = read_config_file(c.config);
    for (const auto& s : c.sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw input_error("bad_override", s);
        std::string key = trim(s.substr(0, eq));
        kv[key] = parse_number(trim(s.substr(eq + 1)), key);
        if (key == "alpha")
            kv.erase("nu_b_bar");
        if (key == "nu_b_bar")
            kv.erase("alpha");
        if (key == "beta")
            kv.erase("delta_slip");
        if (key == "delta_slip")
            kv.erase("beta");
    }
    return params_from_map(kv);
}

/// Hard violations end the run with exit 1; advisory flags are reported in the header.
DerivedParams checked(const FluidWallParams& p, CsvTable& t)
{
    auto rep = validate(p);
    for (const auto& f : rep.flags)
        t.comment("flag: " + f.code);
    if (!rep.ok())
        throw input_error(rep.violations.front().code, rep.violations.front().message);
    return derive(p);
}

std::string describe(const FluidWallParams& p)
{
    return "N=" + fmt(p.N) + " Rc=" + fmt(p.Rc) + " alpha=" + fmt(p.alpha) + " beta=" + fmt(p.beta) +
           " nu_b_bar=" + fmt(p.nu_b_bar) + " delta_slip=" + fmt(p.delta_slip) + " h=" + fmt(p.h);
}

void header(CsvTable& t, const Common& c)
{
    t.comment(std::string("microrib ") + version + " (Eigen " + std::to_string(EIGEN_WORLD_VERSION) + "." +
              std::to_string(EIGEN_MAJOR_VERSION) + "." + std::to_string(EIGEN_MINOR_VERSION) + ")");
    t.comment("command: " + c.command_line);
    t.comment("deterministic: output depends only on the command line and the files it names");
}

void emit(const CsvTable& t, const Common& c)
{
    if (c.out.empty())
        std::cout << t.str();
    else
        write_atomic(c.out, t.str());
}

Regime pick_regime(const DerivedParams& d, RegimeChoice r)
{
    switch (r) {
    case RegimeChoice::SubCritical:
        return Regime::SubCritical;
    case RegimeChoice::SuperCritical:
        return Regime::SuperCritical;
    default:
        return critical_regime(d);
    }
}

std::vector<double> range(double a, double b, double step)
{
    std::vector<double> v;
    int n = int(std::lround((b - a) / step));
    for (int i = 0; i <= n; ++i)
        v.push_back(a + step * i);
    return v;
}

/// Preset grids of the published figure families; user lists override.
struct FigPreset {
    std::vector<double> N, Rc, nu, ds, E;
};

FigPreset preset(const std::string& fig)
{
    FigPreset p;
    p.N = range(0.0, 0.7, 0.05);
    p.Rc = {0.025, 0.05, 0.1, 0.2};
    if (fig == "timeratio") {
        p.nu = {0.05, 0.1, 0.2, 0.4};
        p.ds = {1.0};
        p.E = {10.0};
    } else if (fig == "E-dependence") {
        p.nu = {0.1};
        p.ds = {1.0};
        p.E = {0.0, 1.0, 3.0, 5.0, 7.0, 10.0};
    } else if (fig == "delta-dependence") {
        p.nu = {0.1};
        p.ds = {0.7, 0.8, 1.0, 1.2, 2.0, 10.0};
        p.E = {5.0};
    } else {
        p.nu = {0.1};
        p.ds = {1.0, 10.0};
        p.E = {5.0};
    }
    return p;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Micropolar thin-film lubrication with riblet roughness"};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    for (int i = 0; i < argc; ++i)
        common.command_line += (i ? " " : "") + std::string(i ? argv[i] : "microrib");
    app.add_option("--config", common.config, "parameter file with key = value lines");
    app.add_option("--out", common.out, "CSV output path (default stdout)");
    app.add_option("--set", common.sets, "parameter override key=value (repeatable)");

    FormulaSet formulas = FormulaSet::Corrected;
    auto add_formulas = [&](CLI::App* s, const char* help) {
        s->add_option("--formulas", formulas, help)->transform(CLI::CheckedTransformer(formula_names));
    };

    double lambda = 0.0, E = 0.0;
    std::optional<double> E_lambda;
    RegimeChoice regime_choice = RegimeChoice::Auto;
    auto add_point = [&](CLI::App* s) {
        s->add_option("--lambda", lambda, "roughness amplitude lambda")->check(CLI::NonNegativeNumber);
        s->add_option("--E", E, "normalized roughness energy; E_lambda = lambda^2 E")->check(CLI::NonNegativeNumber);
        s->add_option("--E-lambda", E_lambda, "wall friction coefficient, overrides lambda and E")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--regime", regime_choice, "auto (critical), subcritical or supercritical")
            ->transform(CLI::CheckedTransformer(regime_names));
    };

    std::function<int()> run;

    // validate
    auto* s_validate = app.add_subcommand("validate", "check parameter constraints and print derived scalars");
    s_validate->callback([&] {
        run = [&] {
            auto p = load_params(common);
            CsvTable t({"kind", "code", "message"});
            header(t, common);
            t.comment("params: " + describe(p));
            auto rep = validate(p);
            for (const auto& v : rep.violations)
                t.row({std::string("violation"), v.code, v.message});
            for (const auto& v : rep.flags)
                t.row({std::string("flag"), v.code, v.message});
            if (rep.ok()) {
                auto d = derive(p);
                t.comment("k=" + fmt(d.k) + " gamma=" + fmt(wall_gamma(p)) + " gamma_alpha=" + fmt(d.gamma_alpha) +
                          " C_alpha=" + fmt(d.C_alpha) + " C_N=" + fmt(d.C_N) +
                          " branch=" + (d.alpha_one ? "alpha_one" : "alpha_general"));
            }
            emit(t, common);
            return rep.ok() ? exit_ok : exit_invalid;
        };
    });

    // theta
    auto* s_theta = app.add_subcommand("theta", "flow factor Theta_lambda");
    add_point(s_theta);
    add_formulas(s_theta, "corrected or published coefficient formulas");
    s_theta->callback([&] {
        run = [&] {
            CsvTable t({"regime", "formulas", "lambda", "E", "E_lambda", "theta"});
            header(t, common);
            auto p = load_params(common);
            t.comment("params: " + describe(p));
            auto d = checked(p, t);
            auto r = pick_regime(d, regime_choice);
            double el = E_lambda ? *E_lambda : lambda * lambda * E;
            auto cs = coefficient_set(d, r, el, formulas);
            t.row({std::string(to_string(r)), std::string(to_string(formulas)), fmt(lambda), fmt(E),
                   fmt(cs.E_lambda), fmt(cs.theta)});
            emit(t, common);
            return exit_ok;
        };
    });

    // series
    int nodes = 100;
    bool theta_curve = false;
    double lambda_min = 1e-3, lambda_max = 1.0;
    int points = 61;
    auto* s_series = app.add_subcommand("series", "lambda^2 expansion of Theta and of the profiles");
    s_series->add_option("--E", E, "normalized roughness energy")->check(CLI::NonNegativeNumber);
    s_series->add_option("--nodes", nodes, "profile intervals on [0, h]")->check(CLI::PositiveNumber);
    s_series->add_flag("--theta-curve", theta_curve, "tabulate exact and expanded Theta against lambda instead");
    s_series->add_option("--lambda-min", lambda_min, "smallest lambda of the curve")->check(CLI::PositiveNumber);
    s_series->add_option("--lambda-max", lambda_max, "largest lambda of the curve")->check(CLI::PositiveNumber);
    s_series->add_option("--points", points, "log-spaced curve points")->check(CLI::Range(2, 100000));
    add_formulas(s_series, "corrected or published expansion formulas");
    s_series->callback([&] {
        run = [&] {
            auto p = load_params(common);
            CsvTable probe({});
            auto d = checked(p, probe);
            auto s = series_set(d, E, uniform_grid(p.h, nodes), formulas);
            auto describe_series = [&](CsvTable& t) {
                header(t, common);
                t.comment("params: " + describe(p));
                for (const auto& f : validate(p).flags)
                    t.comment("flag: " + f.code);
                t.comment("formulas=" + std::string(to_string(formulas)) + " E=" + fmt(E) + " theta0=" +
                          fmt(s.theta0) + " theta1=" + fmt(s.theta1) + " Cj=" + fmt(s.Cj) +
                          " second_derivative=" + fmt(s.second_derivative()));
                if (s.has_ladder) {
                    const auto& l = s.ladder;
                    t.comment(std::string(l.primed ? "ladder(primed)" : "ladder") + ": A0=" + fmt(l.A0) +
                              " A1=" + fmt(l.A1) + " B0=" + fmt(l.B0) + " B1=" + fmt(l.B1) + " L0=" + fmt(l.L0) +
                              " L1=" + fmt(l.L1));
                }
            };
            if (theta_curve) {
                if (!(lambda_max > lambda_min))
                    throw input_error("bad_range", "need lambda-max > lambda-min");
                CsvTable t({"lambda", "theta_exact", "theta_approx", "remainder"});
                describe_series(t);
                auto r = critical_regime(d);
                for (int i = 0; i < points; ++i) {
                    double l = lambda_min * std::pow(lambda_max / lambda_min, double(i) / (points - 1));
                    double ex = theta(d, r, l * l * E, formulas), ap = s.theta_approx(l);
                    t.row({l, ex, ap, ex - ap});
                }
                emit(t, common);
                return exit_ok;
            }
            CsvTable t({"y3", "v0", "v1", "varpi0", "varpi1"});
            describe_series(t);
            for (std::size_t i = 0; i < s.grid.size(); ++i)
                t.row({s.grid[i], s.v0[i], s.v1[i], s.varpi0[i], s.varpi1[i]});
            emit(t, common);
            return exit_ok;
        };
    });

    // profiles
    bool with_oracle = false;
    auto* s_profiles = app.add_subcommand("profiles", "velocity and microrotation shapes per unit pressure gradient");
    add_point(s_profiles);
    s_profiles->add_option("--nodes", nodes, "intervals on [0, h]")->check(CLI::PositiveNumber);
    s_profiles->add_flag("--oracle", with_oracle, "add finite-difference columns (nodes: multiple of 4, >= 64)");
    add_formulas(s_profiles, "corrected or published profile formulas");
    s_profiles->callback([&] {
        run = [&] {
            std::vector<std::string> cols{"y3", "u1_over_dp", "w2_over_dp"};
            if (with_oracle) {
                cols.push_back("u1_oracle");
                cols.push_back("w2_oracle");
            }
            CsvTable t(cols);
            header(t, common);
            auto p = load_params(common);
            t.comment("params: " + describe(p));
            auto d = checked(p, t);
            auto r = pick_regime(d, regime_choice);
            double el = E_lambda ? *E_lambda : lambda * lambda * E;
            auto cs = coefficient_set(d, r, el, formulas);
            t.comment("regime=" + std::string(to_string(r)) + " E_lambda=" + fmt(cs.E_lambda) +
                      " theta=" + fmt(cs.theta));
            auto grid = uniform_grid(p.h, nodes);
            auto prof = profiles(d, cs, grid);
            std::optional<BvpSolution> bvp;
            if (with_oracle) {
                bvp = bvp_solve(d, r, cs.E_lambda, nodes);
                t.comment("theta_oracle=" + fmt(bvp->theta_numeric) +
                          " theta_richardson=" + fmt(bvp->theta_richardson));
            }
            for (std::size_t i = 0; i < prof.size(); ++i) {
                std::vector<std::string> row{fmt(prof[i].y3), fmt(prof[i].u1_over_dp), fmt(prof[i].w2_over_dp)};
                if (bvp) {
                    row.push_back(fmt(bvp->u1[i]));
                    row.push_back(fmt(bvp->w2[i]));
                }
                t.row(std::move(row));
            }
            emit(t, common);
            return exit_ok;
        };
    });

    // cell
    RibletKind riblet = RibletKind::VShape;
    std::string profile_path, field_path;
    int samples = 32, refine = 3;
    double cell_lambda = 1.0, M_trunc = 6.0;
    bool laplace = false;
    auto* s_cell = app.add_subcommand("cell", "riblet cell problem energies E (Stokes) or F (Laplace)");
    auto* o_riblet = s_cell->add_option("--riblet", riblet, "vshape, ushape or blade")
                         ->transform(CLI::CheckedTransformer(riblet_names));
    s_cell->add_option("--profile", profile_path, "two-column (z1, Psi) file on a uniform grid")
        ->excludes(o_riblet);
    s_cell->add_option("--n", samples, "profile samples and level-1 cells per period")->check(CLI::Range(16, 4096));
    s_cell->add_option("--refine", refine, "number of mesh levels")->check(CLI::Range(1, 8));
    s_cell->add_option("--lambda", cell_lambda, "boundary amplitude")->check(CLI::NonNegativeNumber);
    s_cell->add_option("--M", M_trunc, "truncation height")->check(CLI::Range(4.0, 100.0));
    s_cell->add_flag("--laplace", laplace, "solve the Laplace problem for F");
    s_cell->add_option("--field", field_path, "write finest-level vertex field (z1, z3, phi1, phi3, q)");
    s_cell->callback([&] {
        run = [&] {
            auto prof = profile_path.empty() ? make_riblet(riblet, samples) : load_riblet(profile_path);
            auto sol = laplace ? solve_laplace_cell(prof, cell_lambda, M_trunc, refine)
                               : solve_stokes_cell(prof, cell_lambda, M_trunc, refine);
            const char* name = laplace ? "F" : "E";
            CsvTable t({"level", "nx", "nz", "elements", "max_diameter", name, std::string(name) + "_quadform",
                        "div_residual"});
            header(t, common);
            t.comment("profile=" + std::string(to_string(prof.kind)) + " n=" + std::to_string(prof.n) +
                      " peak=" + fmt(prof.peak()) + " lambda=" + fmt(cell_lambda) + " M=" + fmt(M_trunc));
            double value = laplace ? sol.F_lambda : sol.E_lambda;
            t.comment(std::string(name) + "=" + fmt(value) + " converged=" + (sol.converged ? "yes" : "no"));
            for (const auto& l : sol.convergence)
                t.row({fmt(double(l.level)), fmt(double(l.nx)), fmt(double(l.nz)), fmt(double(l.elements)),
                       fmt(l.max_diameter), fmt(l.energy), fmt(l.energy_quadform), fmt(l.div_residual)});
            emit(t, common);
            if (!field_path.empty()) {
                CsvTable f({"z1", "z3", "phi1", "phi3", "q"});
                header(f, common);
                const auto& fd = sol.field;
                for (std::size_t i = 0; i < fd.z1.size(); ++i)
                    f.row({fd.z1[i], fd.z3[i], fd.phi1[i], fd.phi3[i], fd.q[i]});
                write_atomic(field_path, f.str());
            }
            if (!sol.converged) {
                std::cerr << "microrib: not_converged: two finest levels differ by more than 1%\n";
                return exit_solver;
            }
            return exit_ok;
        };
    });

    // pressure
    std::optional<double> theta_value;
    double S = 1.0;
    int pressure_points = 101;
    auto* s_pressure = app.add_subcommand("pressure", "Reynolds pressure p(y1) with p(0) = p(1) = 0");
    add_point(s_pressure);
    add_formulas(s_pressure, "formulas used when Theta is computed from parameters");
    s_pressure->add_option("--theta", theta_value, "use this Theta instead of computing it from parameters");
    s_pressure->add_option("--S", S, "squeeze rate");
    s_pressure->add_option("--points", pressure_points, "grid points on [0, 1]")->check(CLI::Range(11, 1000000));
    s_pressure->callback([&] {
        run = [&] {
            CsvTable t({"y1", "p", "dp"});
            header(t, common);
            double th = 0.0;
            if (theta_value) {
                th = *theta_value;
            } else {
                auto p = load_params(common);
                t.comment("params: " + describe(p));
                auto d = checked(p, t);
                th = theta(d, pick_regime(d, regime_choice), E_lambda ? *E_lambda : lambda * lambda * E, formulas);
            }
            auto f = solve_pressure(th, S);
            t.comment("theta=" + fmt(th) + " S=" + fmt(S) + " load=" + fmt(f.load) +
                      " weak_residual=" + fmt(weak_residual(f, pressure_points)));
            for (int i = 0; i < pressure_points; ++i) {
                double y = double(i) / (pressure_points - 1);
                t.row({y, f.p(y), f.dp(y)});
            }
            emit(t, common);
            return exit_ok;
        };
    });

    // bearing
    BearingConfig bcfg;
    std::optional<double> eps0_opt;
    int stride = 1;
    auto* s_bearing = app.add_subcommand("bearing", "squeeze-film gap eps(t) and half-life time");
    auto add_bearing = [&](CLI::App* s) {
        s->add_option("--kappa", bcfg.kappa, "roughness intensity, lambda^2 = kappa eps")
            ->check(CLI::NonNegativeNumber);
        s->add_option("--chi", bcfg.chi, "load constant")->check(CLI::PositiveNumber);
        s->add_option("--eps-max", bcfg.eps_max, "cap on the initial gap")->check(CLI::PositiveNumber);
    };
    add_bearing(s_bearing);
    s_bearing->add_option("--E", bcfg.E, "normalized roughness energy")->check(CLI::NonNegativeNumber);
    s_bearing->add_option("--dt", bcfg.dt, "step (0 selects 1e-3/(chi Theta0 eps0^2))")->check(CLI::NonNegativeNumber);
    s_bearing->add_option("--t-max", bcfg.t_max, "horizon (0 selects 1e6 steps)")->check(CLI::NonNegativeNumber);
    s_bearing->add_option("--eps0", eps0_opt, "initial gap (default from the expansion)")->check(CLI::PositiveNumber);
    s_bearing->add_option("--stride", stride, "write every stride-th step")->check(CLI::PositiveNumber);
    add_formulas(s_bearing, "corrected or published Theta formulas");
    s_bearing->callback([&] {
        run = [&] {
            CsvTable t({"t", "eps", "lambda", "theta"});
            header(t, common);
            bcfg.params = load_params(common);
            bcfg.formulas = formulas;
            t.comment("params: " + describe(bcfg.params));
            auto d = checked(bcfg.params, t);
            auto s = series_set(d, bcfg.E, {}, formulas);
            double eps0 = eps0_opt ? *eps0_opt : init_eps0(s, bcfg.kappa, bcfg.eps_max);
            auto tr = simulate(bcfg, eps0);
            t.comment("kappa=" + fmt(bcfg.kappa) + " chi=" + fmt(bcfg.chi) + " E=" + fmt(bcfg.E) +
                      " formulas=" + to_string(formulas) + " eps0=" + fmt(tr.eps0) + " dt=" + fmt(tr.dt) +
                      " T_half=" + fmt(tr.t_half));
            for (std::size_t i = 0; i < tr.rows.size(); ++i)
                if (i % std::size_t(stride) == 0 || i + 1 == tr.rows.size())
                    t.row({tr.rows[i].t, tr.rows[i].eps, tr.rows[i].lambda, tr.rows[i].theta});
            emit(t, common);
            return exit_ok;
        };
    });

    // sweep
    std::string fig = "timeratio";
    std::vector<double> lN, lRc, lnu, lds, lE;
    unsigned threads = 0;
    FormulaSet sweep_formulas = FormulaSet::Published;
    auto* s_sweep = app.add_subcommand("sweep", "normalized half-life T_half(N)/T_half(0) over parameter grids");
    s_sweep
        ->add_option("--fig", fig,
                     "preset grid: timeratio, E-dependence, delta-dependence or interp (Theta1/Theta0 diagnostics)")
        ->check(CLI::IsMember({"timeratio", "E-dependence", "delta-dependence", "interp"}));
    s_sweep->add_option("--N", lN, "N values, comma separated, must contain 0")->delimiter(',');
    s_sweep->add_option("--Rc", lRc, "Rc values")->delimiter(',');
    s_sweep->add_option("--nu-b", lnu, "nu_b_bar values")->delimiter(',');
    s_sweep->add_option("--delta-slip", lds, "delta_slip values")->delimiter(',');
    s_sweep->add_option("--E", lE, "E values")->delimiter(',');
    s_sweep->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
    add_bearing(s_sweep);
    s_sweep->add_option("--formulas", sweep_formulas, "corrected or published (default published)")
        ->transform(CLI::CheckedTransformer(formula_names));
    s_sweep->callback([&] {
        run = [&] {
            auto pr = preset(fig);
            SweepGrid g{lN.empty() ? pr.N : lN, lRc.empty() ? pr.Rc : lRc, lnu.empty() ? pr.nu : lnu,
                        lds.empty() ? pr.ds : lds, lE.empty() ? pr.E : lE};
            if (fig == "interp") {
                CsvTable t({"N", "Rc", "nu_b_bar", "delta_slip", "E", "CjE_theta1_over_theta0",
                            "theta1_over_theta0", "CjE_theta1_over_theta0_normalized",
                            "theta1_over_theta0_normalized", "flags"});
                header(t, common);
                t.comment("fig=interp formulas=" + std::string(to_string(sweep_formulas)));
                if (std::find(g.N.begin(), g.N.end(), 0.0) == g.N.end())
                    throw input_error("missing_N0", "N-list must contain 0");
                for (double rc : g.Rc)
                    for (double nu : g.nu_b_bar)
                        for (double ds : g.delta_slip)
                            for (double e : g.E) {
                                std::vector<std::array<double, 2>> f;
                                std::vector<std::string> flags;
                                double f0a = NAN, f0b = NAN;
                                for (double n : g.N) {
                                    auto p = FluidWallParams::relative(n, rc, nu, ds, 1.0);
                                    auto rep = validate(p);
                                    std::string fl;
                                    for (const auto& v : rep.violations)
                                        fl += (fl.empty() ? "" : ";") + v.code;
                                    for (const auto& v : rep.flags)
                                        fl += (fl.empty() ? "" : ";") + v.code;
                                    std::array<double, 2> v{NAN, NAN};
                                    try {
                                        auto r = interpretation_factor(series_set(derive(p), e, {}, sweep_formulas));
                                        v = {r.first, r.second};
                                    } catch (const Error& err) {
                                        fl += (fl.empty() ? "" : ";") + err.code();
                                    }
                                    if (n == 0.0) {
                                        f0a = v[0];
                                        f0b = v[1];
                                    }
                                    f.push_back(v);
                                    flags.push_back(fl);
                                }
                                for (std::size_t i = 0; i < g.N.size(); ++i)
                                    t.row({fmt(g.N[i]), fmt(rc), fmt(nu), fmt(ds), fmt(e), fmt(f[i][0]), fmt(f[i][1]),
                                           fmt(f[i][0] / f0a), fmt(f[i][1] / f0b), flags[i]});
                            }
                emit(t, common);
                return exit_ok;
            }
            bcfg.formulas = sweep_formulas;
            auto rows = sweep(g, bcfg, threads);
            CsvTable t({"N", "Rc", "nu_b_bar", "delta_slip", "E", "kappa", "eps0", "T_half", "T_half_normalized",
                        "flags"});
            header(t, common);
            t.comment("fig=" + fig + " formulas=" + to_string(sweep_formulas) + " chi=" + fmt(bcfg.chi) +
                      " eps_max=" + fmt(bcfg.eps_max));
            for (const auto& r : rows)
                t.row({fmt(r.N), fmt(r.Rc), fmt(r.nu_b_bar), fmt(r.delta_slip), fmt(r.E), fmt(r.kappa), fmt(r.eps0),
                       fmt(r.T_half), fmt(r.T_half_normalized), r.flags});
            emit(t, common);
            return exit_ok;
        };
    });

    // oracle-check
    std::uint64_t seed = 1;
    int count = 20, oracle_n = 4096;
    double tol = 1e-6;
    auto* s_oracle = app.add_subcommand("oracle-check", "closed forms against the finite-difference solver");
    s_oracle->add_option("--seed", seed, "seed of the random parameter points");
    s_oracle->add_option("--count", count, "points per regime")->check(CLI::Range(1, 100000));
    s_oracle->add_option("--n", oracle_n, "finite-difference intervals (multiple of 4, >= 64)");
    s_oracle->add_option("--tol", tol, "relative tolerance on Theta and profiles")->check(CLI::PositiveNumber);
    add_formulas(s_oracle, "corrected or published closed forms");
    s_oracle->callback([&] {
        run = [&] {
            CsvTable t({"regime", "index", "N", "Rc", "nu_b_bar", "delta_slip", "h", "E_lambda", "theta_closed",
                        "theta_oracle", "theta_err", "profile_err", "wall_residual", "ode_residual", "pass"});
            header(t, common);
            t.comment("seed=" + std::to_string(seed) + " count=" + std::to_string(count) + " n=" +
                      std::to_string(oracle_n) + " tol=" + fmt(tol) + " formulas=" + to_string(formulas));
            int failures = 0;
            for (Regime r : {Regime::CriticalGeneral, Regime::CriticalAlphaOne, Regime::SubCritical,
                             Regime::SuperCritical}) {
                auto cases = random_cases(r, count, seed);
                for (std::size_t i = 0; i < cases.size(); ++i) {
                    auto c = compare_with_oracle(cases[i], oracle_n, formulas);
                    bool pass = c.theta_err <= tol && c.profile_err <= tol && c.wall <= 1e-10 && c.ode <= 1e-9;
                    failures += !pass;
                    const auto& p = c.c.params;
                    t.row({std::string(to_string(r)), std::to_string(i), fmt(p.N), fmt(p.Rc), fmt(p.nu_b_bar),
                           fmt(p.delta_slip), fmt(p.h), fmt(c.c.E_lambda), fmt(c.theta_closed), fmt(c.theta_oracle),
                           fmt(c.theta_err), fmt(c.profile_err), fmt(c.wall), fmt(c.ode),
                           std::string(pass ? "yes" : "no")});
                }
            }
            t.comment("failures=" + std::to_string(failures));
            emit(t, common);
            return failures ? exit_invalid : exit_ok;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        return run();
    } catch (const Error& e) {
        std::cerr << "microrib: " << e.what() << '\n';
        return e.kind() == ErrorKind::Input ? exit_invalid : exit_solver;
    } catch (const std::exception& e) {
        std::cerr << "microrib: " << e.what() << '\n';
        return exit_solver;
    }
}
