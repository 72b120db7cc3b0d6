#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "asympt.hpp"
#include "coeffs.hpp"
#include "error.hpp"
#include "params.hpp"

namespace microrib {

struct BearingConfig {
    double kappa = 1.0;    ///< roughness intensity, lambda^2 = kappa eps
    double chi = 1.0;      ///< load constant
    double eps_max = 0.02; ///< cap on eps0
    double dt = 0.0;       ///< 0 selects 1e-3/(chi Theta0 eps0^2)
    double t_max = 0.0;    ///< 0 selects 1e6 steps
    double E = 0.0;        ///< normalized roughness energy
    FluidWallParams params;
    FormulaSet formulas = FormulaSet::Corrected;
};

struct BearingRow {
    double t, eps, lambda, theta;
};

struct BearingTrajectory {
    std::vector<BearingRow> rows;
    double eps0 = 0.0;
    double dt = 0.0;
    double t_half = std::numeric_limits<double>::quiet_NaN();
    bool half_reached = false;
    bool monotone = true;
};

inline void check_bearing_config(const BearingConfig& c)
{
    if (!(c.kappa >= 0.0) || !(c.chi > 0.0) || !(c.eps_max > 0.0) || !(c.dt >= 0.0) || !(c.t_max >= 0.0) ||
        !(c.E >= 0.0))
        throw input_error("bad_bearing_config", "need kappa >= 0, chi > 0, eps_max > 0, dt >= 0, E >= 0");
}

/// eps0 = min(Theta0/(kappa Cj E Theta1), eps_max).
inline double init_eps0(const SeriesSet& s, double kappa, double eps_max)
{
    double den = kappa * s.Cj * s.E * s.theta1;
    if (!(den > 0.0))
        return eps_max;
    return std::min(s.theta0 / den, eps_max);
}

/// Theta as a function of the gap for fixed wall and roughness data.
class GapTheta {
public:
    GapTheta(const BearingConfig& c) : d_(derive(c.params)), regime_(critical_regime(d_)), c_(c) {}

    double lambda(double eps) const { return std::sqrt(c_.kappa * eps); }
    double operator()(double eps) const { return theta(d_, regime_, c_.E * c_.kappa * eps, c_.formulas); }
    double theta0() const { return theta(d_, regime_, 0.0, c_.formulas); }
    const DerivedParams& derived() const { return d_; }

private:
    DerivedParams d_;
    Regime regime_;
    BearingConfig c_;
};

/// Explicit midpoint integration of eps' = -chi Theta(eps) eps^3 until t_max or eps < eps0/4.
inline BearingTrajectory simulate(const BearingConfig& cfg, double eps0)
{
    check_bearing_config(cfg);
    if (!(eps0 > 0.0) || eps0 > cfg.eps_max)
        throw input_error("bad_eps0", "need 0 < eps0 <= eps_max");
    GapTheta th(cfg);
    double f0 = th(eps0);
    if (!(f0 > 0.0))
        throw input_error("theta_nonpositive", "Theta at eps0 must be positive");

    BearingTrajectory tr;
    tr.eps0 = eps0;
    tr.dt = cfg.dt > 0.0 ? cfg.dt : 1e-3 / (cfg.chi * th.theta0() * eps0 * eps0);
    double t_max = cfg.t_max > 0.0 ? cfg.t_max : 1e6 * tr.dt;
    auto rhs = [&](double e) { return -cfg.chi * th(e) * e * e * e; };

    double t = 0.0, e = eps0;
    tr.rows.push_back({t, e, th.lambda(e), f0});
    while (t < t_max && e >= eps0 / 4.0) {
        double k1 = rhs(e);
        double k2 = rhs(e + 0.5 * tr.dt * k1);
        double en = e + tr.dt * k2;
        if (std::abs(en - e) > 0.5 * e)
            throw solver_error("step_unstable", "|d eps| > eps/2 in one step");
        if (en >= e) {
            tr.monotone = false;
            throw solver_error("non_monotone", "eps increased; Theta <= 0 reached");
        }
        double tn = t + tr.dt;
        if (!tr.half_reached && en < eps0 / 2.0) {
            tr.half_reached = true;
            tr.t_half = t + tr.dt * (e - eps0 / 2.0) / (e - en);
        }
        t = tn;
        e = en;
        tr.rows.push_back({t, e, th.lambda(e), th(e)});
    }
    return tr;
}

/// (Cj E Theta1/Theta0, Theta1/Theta0)
inline std::pair<double, double> interpretation_factor(const SeriesSet& s)
{
    if (!(std::abs(s.theta0) >= 1e-14))
        throw input_error("theta0_zero", "|Theta0| < 1e-14");
    return {s.Cj * s.E * s.theta1 / s.theta0, s.theta1 / s.theta0};
}

struct SweepGrid {
    std::vector<double> N, Rc, nu_b_bar, delta_slip, E;
};

struct SweepRow {
    double N, Rc, nu_b_bar, delta_slip, E, kappa, eps0, T_half, T_half_normalized;
    std::string flags; ///< ';'-separated codes
};

namespace detail {

inline void add_flag(std::string& flags, const std::string& code)
{
    if (!flags.empty())
        flags += ';';
    flags += code;
}

inline SweepRow sweep_point(double N, double Rc, double nu, double ds, double E, const BearingConfig& base)
{
    SweepRow row{N, Rc, nu, ds, E, base.kappa, std::numeric_limits<double>::quiet_NaN(),
                 std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(), {}};
    BearingConfig cfg = base;
    cfg.E = E;
    cfg.params = FluidWallParams::relative(N, Rc, nu, ds, base.params.h);
    auto rep = validate(cfg.params);
    for (const auto& v : rep.violations)
        add_flag(row.flags, v.code);
    for (const auto& v : rep.flags)
        add_flag(row.flags, v.code);
    try {
        auto d = derive(cfg.params);
        auto s = series_set(d, E, {}, cfg.formulas);
        row.eps0 = init_eps0(s, cfg.kappa, cfg.eps_max);
        auto tr = simulate(cfg, row.eps0);
        if (tr.half_reached)
            row.T_half = tr.t_half;
        else
            add_flag(row.flags, "half_not_reached");
    } catch (const Error& e) {
        add_flag(row.flags, e.code());
    }
    return row;
}

} // namespace detail

/// T_half over the grid, normalized by the N = 0 entry of each (Rc, nu_b_bar, delta_slip, E) family.
/// Rows are ordered family-major, N-minor, independent of thread scheduling.
inline std::vector<SweepRow> sweep(const SweepGrid& g, const BearingConfig& cfg, unsigned threads = 0)
{
    check_bearing_config(cfg);
    auto zero = std::find(g.N.begin(), g.N.end(), 0.0);
    if (zero == g.N.end())
        throw input_error("missing_N0", "N-list must contain 0");
    std::size_t nN = g.N.size();
    std::vector<std::array<double, 4>> fam;
    for (double rc : g.Rc)
        for (double nu : g.nu_b_bar)
            for (double ds : g.delta_slip)
                for (double e : g.E)
                    fam.push_back({rc, nu, ds, e});
    std::size_t total = fam.size() * nN;
    std::vector<SweepRow> rows(total);

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(std::max<std::size_t>(total, 1)));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const auto& f = fam[i / nN];
            rows[i] = detail::sweep_point(g.N[i % nN], f[0], f[1], f[2], f[3], cfg);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();

    std::size_t i0 = std::size_t(zero - g.N.begin());
    for (std::size_t f = 0; f < fam.size(); ++f) {
        double ref = rows[f * nN + i0].T_half;
        for (std::size_t j = 0; j < nN; ++j) {
            auto& r = rows[f * nN + j];
            r.T_half_normalized = j == i0 && std::isfinite(ref) ? 1.0 : r.T_half / ref;
        }
    }
    return rows;
}

} // namespace microrib
