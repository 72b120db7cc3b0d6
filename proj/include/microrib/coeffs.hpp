#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"
#include "params.hpp"

namespace microrib {

/// Roughness regime. SubCritical is the critical formula evaluated at E_lambda = 0.
enum class Regime { CriticalGeneral, CriticalAlphaOne, SubCritical, SuperCritical };

/// Corrected: closed forms validated against the boundary-value oracle.
/// Published: the printed expressions, typographical slips included.
enum class FormulaSet { Corrected, Published };

inline const char* to_string(Regime r)
{
    switch (r) {
    case Regime::CriticalGeneral: return "critical_general";
    case Regime::CriticalAlphaOne: return "critical_alpha_one";
    case Regime::SubCritical: return "sub_critical";
    case Regime::SuperCritical: return "super_critical";
    }
    return "?";
}

inline const char* to_string(FormulaSet f) { return f == FormulaSet::Corrected ? "corrected" : "published"; }

/// Critical regime matching the alpha branch of `d`.
inline Regime critical_regime(const DerivedParams& d)
{
    return d.alpha_one ? Regime::CriticalAlphaOne : Regime::CriticalGeneral;
}

/// Coefficients of the general solution of the reduced system (unit pressure gradient):
///   u = 2N^2 (A sinh(ky)/k + Bh (cosh(ky)-1)/k^2) + c y^2/2 + c K1 y + K0
///   w = A cosh(ky) + Bh sinh(ky)/k + c y/2 + c K1/2,   c = 1/(1-N^2), Bh = k B.
template <class T>
struct GeneralSolution {
    T A{}, Bh{}, K1{}, K0{};
};

namespace detail {

inline double n2_of(const DerivedParams& d) { return d.p.N * d.p.N; }

/// alpha != 1. Returns the solution and the scaled inverse k^2/L.
template <class T>
GeneralSolution<T> alpha_neq1(const DerivedParams& d, T eta, T om, T* Linv_out = nullptr)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c1 = 1.0 - n2, g = d.gamma_alpha, r = d.r;
    T brk1 = g / 2.0 + K.C - om * (g / 2.0 + n2 * K.S_k / h);
    T brk2 = r - 4.0 * n2 * n2 * eta * K.Cm1_k2;
    T brk3 = K.S_k - om * n2 * K.Cm1_k2 / h;
    double brk4 = g * h + 2.0 * n2 * K.S_k;
    T Linv = brk1 * brk2 + 2.0 * n2 * eta * brk3 * brk4;
    T pre = -1.0 / (2.0 * c1 * Linv);
    T rr = r - 2.0 * n2 * h * h * eta;
    GeneralSolution<T> s;
    s.A = pre * (h / 2.0 * (1.0 + eta) * brk2 - brk3 * rr);
    s.Bh = pre * (n2 * h * (1.0 + eta) * eta * brk4 + rr * brk1);
    s.K1 = c1 * (g - om / h * brk4) * s.A - 2.0 * n2 / h * c1 * K.Cm1_k2 * om * s.Bh - om * h / 2.0;
    s.K0 = -eta * brk4 * s.A - 2.0 * n2 * eta * K.Cm1_k2 * s.Bh - eta * h * h / (2.0 * c1);
    if (Linv_out)
        *Linv_out = Linv;
    return s;
}

/// alpha = 1. `q` is (1 - mu)/N^2, passed separately to keep small-N accuracy.
template <class T>
GeneralSolution<T> alpha_eq1(const DerivedParams& d, T mu, T q, T* Linv_out = nullptr)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c1 = 1.0 - n2, r = d.r;
    T om = q * n2;
    T brk2 = r - 4.0 * n2 * n2 * mu * K.Cm1_k2;
    T brk5 = K.S_k - om * K.C * K.T2;
    T Linv = (1.0 - q * K.kcoth) * brk2 + 4.0 * n2 * h * mu * brk5;
    GeneralSolution<T> s;
    s.K1 = -(brk2 * (h - q * h * K.kcoth / 2.0) - brk5 * (r - 2.0 * n2 * h * h * mu)) / Linv;
    s.Bh = -(2.0 * n2 * h * h * mu + r - q * K.kcoth * r) / (2.0 * c1 * Linv);
    s.K0 = -mu * h * s.K1 / c1 - 2.0 * n2 * mu * K.Cm1_k2 * s.Bh - mu * h * h / (2.0 * c1);
    s.A = q / (2.0 * mu * K.S_k) * s.K0;
    if (Linv_out)
        *Linv_out = Linv;
    return s;
}

/// Super-critical wall (u = 0, w' = 0). `published_B` selects the printed B'' without its L'' factor.
inline GeneralSolution<double> super_critical(const DerivedParams& d, bool published_B, double* Lpp = nullptr)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c1 = 1.0 - n2;
    double Lsup = 1.0 / (K.C - n2 * K.S_k / h);
    GeneralSolution<double> s;
    s.A = Lsup / (2.0 * c1) * (-h / 2.0 + K.S_k - n2 * K.Cm1_k2 / h);
    s.Bh = published_B ? -(K.C - n2 * K.S_k / h) / (2.0 * c1) : -1.0 / (2.0 * c1);
    s.K1 = -c1 * (2.0 * n2 / h) * (K.S_k * s.A + K.Cm1_k2 * s.Bh) - h / 2.0;
    s.K0 = 0.0;
    if (Lpp)
        *Lpp = Lsup;
    return s;
}

/// N = 0: the microrotation decouples and u' = E u at the wall.
/// `om` is 1 - eta with eta = 1/(1 + h E).
template <class T>
GeneralSolution<T> newtonian(const DerivedParams& d, T eta, T om, FormulaSet f)
{
    double h = d.p.h;
    GeneralSolution<T> s;
    s.K0 = -eta * h * h / 2.0;
    if (f == FormulaSet::Published) {
        s.K1 = om * h / 2.0;
        return s;
    }
    s.K1 = -om * h / 2.0;
    double inv_delta = d.two_n2_beta / d.p.Rc;
    s.A = s.K0 * h * inv_delta - s.K1 / 2.0;
    s.Bh = -s.K0 * inv_delta - 0.5;
    return s;
}

/// Theta = -int_0^h u dy for a general solution.
template <class T>
T theta_structural(const DerivedParams& d, const GeneralSolution<T>& s)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c = 1.0 / (1.0 - n2);
    return -(2.0 * n2 * (s.A * K.Cm1_k2 + s.Bh * K.Smx_k3) + c * h * h * h / 6.0 + c * s.K1 * h * h / 2.0 + s.K0 * h);
}

/// Printed Reynolds coefficient, alpha != 1.
template <class T>
T theta_printed_neq1(const DerivedParams& d, const GeneralSolution<T>& s, T eta, T om)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c = 1.0 / (1.0 - n2), g = d.gamma_alpha, h3 = h * h * h;
    T ta = 2.0 * n2 * (K.Cm1_k2 - eta * h * K.S_k) + g / 2.0 * h * h * (1.0 - 2.0 * eta) - om * (g * h + 2.0 * n2 * K.S_k);
    T tb = 2.0 * n2 * K.shmxch_k3() + om * h * n2 * K.Cm1_k2;
    return c * h3 / 3.0 - om * 3.0 * c * h3 / 4.0 - ta * s.A - tb * s.Bh;
}

/// Printed Reynolds coefficient, alpha = 1.
template <class T>
T theta_printed_eq1(const DerivedParams& d, const GeneralSolution<T>& s, T mu, T om)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c = 1.0 / (1.0 - n2), h3 = h * h * h;
    T t0 = -c / 2.0 * (h3 / 3.0 - mu * h3) + om * h * h * c * K.T2;
    T ta = c * (h * h / 2.0 - mu * h * h) - om * h * c * K.T2;
    T tb = 2.0 * n2 * (K.shmxch_k3() + om * (h * K.Cm1_k2 - K.Cm1_k2 * K.Cm1_k2 / K.S_k));
    // A' = K1 and B' = Bh/k in the general representation
    return t0 - ta * s.K1 - tb * s.Bh;
}

/// Printed super-critical coefficient.
inline double theta_printed_super(const DerivedParams& d, const GeneralSolution<double>& s)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c = 1.0 / (1.0 - n2);
    return c * h * h * h / 12.0 - 2.0 * n2 * (K.Cm1_k2 - h / 2.0 * K.S_k) * s.A -
           2.0 * n2 * (K.Smx_k3 - h / 2.0 * K.Cm1_k2) * s.Bh;
}

} // namespace detail

/// Closed-form coefficients of one regime. Unset optionals belong to other regimes.
struct CoefficientSet {
    Regime regime = Regime::CriticalGeneral;
    FormulaSet formulas = FormulaSet::Corrected;
    double E_lambda = 0.0;
    std::optional<double> A, B, L;       ///< alpha != 1
    std::optional<double> Ap, Bp, Lp;    ///< alpha = 1
    std::optional<double> App, Bpp, Lpp; ///< super-critical
    std::optional<double> eta_lambda, mu_lambda;
    double theta = 0.0;
    bool newtonian = false;
    GeneralSolution<double> sol; ///< general-solution coefficients used for profiles
    double om = 0.0;             ///< 1 - eta_lambda or 1 - mu_lambda
};

namespace detail {

inline void check_regime(const DerivedParams& d, Regime regime, double E_lambda)
{
    if (!(E_lambda >= 0.0) || !std::isfinite(E_lambda))
        throw input_error("negative_E", "E_lambda must be finite and >= 0");
    if (d.newtonian)
        return;
    if (regime == Regime::CriticalGeneral && d.alpha_one)
        throw input_error("regime_mismatch", "alpha = 1 data sent to the alpha != 1 formulas");
    if (regime == Regime::CriticalAlphaOne && !d.alpha_one)
        throw input_error("regime_mismatch", "alpha != 1 data sent to the alpha = 1 formulas");
}

} // namespace detail

inline CoefficientSet coefficient_set(const DerivedParams& d, Regime regime, double E_lambda,
                                      FormulaSet f = FormulaSet::Corrected)
{
    if (regime == Regime::SuperCritical)
        E_lambda = 0.0;
    if (regime == Regime::SubCritical)
        E_lambda = 0.0;
    detail::check_regime(d, regime, E_lambda);

    CoefficientSet cs;
    cs.regime = regime;
    cs.formulas = f;
    cs.E_lambda = E_lambda;
    cs.newtonian = d.newtonian;
    double k = d.k;

    if (regime == Regime::SuperCritical) {
        double Lpp = 0.0;
        cs.sol = detail::super_critical(d, f == FormulaSet::Published, &Lpp);
        cs.App = cs.sol.A;
        cs.Bpp = cs.sol.Bh / k;
        cs.Lpp = Lpp;
        cs.theta = f == FormulaSet::Published ? detail::theta_printed_super(d, cs.sol)
                                              : detail::theta_structural(d, cs.sol);
        return cs;
    }

    if (d.newtonian) {
        double eta = 1.0 / (1.0 + d.p.h * E_lambda);
        double om = d.p.h * E_lambda * eta;
        cs.sol = detail::newtonian<double>(d, eta, om, f);
        cs.eta_lambda = eta;
        cs.om = om;
        cs.theta = detail::theta_structural(d, cs.sol);
        return cs;
    }

    if (!d.alpha_one) {
        double eta = 1.0 / (1.0 + d.C_alpha * E_lambda);
        double om = d.C_alpha * E_lambda * eta;
        double Linv = 0.0;
        cs.sol = detail::alpha_neq1<double>(d, eta, om, &Linv);
        cs.A = cs.sol.A;
        cs.B = cs.sol.Bh / k;
        cs.L = -1.0 / (k * k * Linv);
        cs.eta_lambda = eta;
        cs.om = om;
        cs.theta = f == FormulaSet::Published ? detail::theta_printed_neq1(d, cs.sol, eta, om)
                                              : detail::theta_structural(d, cs.sol);
        return cs;
    }

    double cne = d.C_N * E_lambda;
    if (cne >= 1.0)
        throw input_error("singular_mu", "C_N E_lambda >= 1");
    double mu = 1.0 / (1.0 - cne);
    double q = -d.K.S_k / (1.0 - detail::n2_of(d)) * E_lambda * mu;
    double Linv = 0.0;
    cs.sol = detail::alpha_eq1<double>(d, mu, q, &Linv);
    cs.Ap = cs.sol.K1;
    cs.Bp = cs.sol.Bh / k;
    cs.Lp = -1.0 / (k * k * Linv);
    cs.mu_lambda = mu;
    cs.om = q * detail::n2_of(d);
    cs.theta = f == FormulaSet::Published ? detail::theta_printed_eq1(d, cs.sol, mu, cs.om)
                                          : detail::theta_structural(d, cs.sol);
    return cs;
}

inline double theta(const DerivedParams& d, Regime regime, double E_lambda, FormulaSet f = FormulaSet::Corrected)
{
    return coefficient_set(d, regime, E_lambda, f).theta;
}

/// Velocity and microrotation shapes per unit pressure gradient.
struct ProfileSample {
    double y3 = 0.0;
    double u1_over_dp = 0.0;
    double w2_over_dp = 0.0;
};

/// Values and y-derivatives of a general solution at one point.
template <class T>
struct ProfileJet {
    T u{}, du{}, d2u{}, w{}, dw{}, d2w{};
};

template <class T>
ProfileJet<T> evaluate(const DerivedParams& d, const GeneralSolution<T>& s, double y)
{
    double n2 = d.p.N * d.p.N, c = 1.0 / (1.0 - n2), k = d.k;
    kernels::PointKernels P(k, y);
    ProfileJet<T> j;
    j.u = 2.0 * n2 * (s.A * P.sh_k + s.Bh * P.chm1_k2) + c * y * y / 2.0 + c * s.K1 * y + s.K0;
    j.du = 2.0 * n2 * (s.A * P.ch + s.Bh * P.sh_k) + c * y + c * s.K1;
    j.d2u = 2.0 * n2 * (s.A * k * P.sh + s.Bh * P.ch) + c;
    j.w = s.A * P.ch + s.Bh * P.sh_k + c * y / 2.0 + c * s.K1 / 2.0;
    j.dw = s.A * k * P.sh + s.Bh * P.ch + c / 2.0;
    j.d2w = s.A * k * k * P.ch + s.Bh * k * P.sh;
    return j;
}

namespace detail {

/// Printed velocity/microrotation shapes (Published set, N > 0).
inline std::pair<double, double> printed_profile(const DerivedParams& d, const CoefficientSet& cs, double y)
{
    const auto& K = d.K;
    double n2 = n2_of(d), h = d.p.h, c = 1.0 / (1.0 - n2), k = d.k;
    kernels::PointKernels P(k, y);
    const auto& s = cs.sol;
    if (cs.regime == Regime::SuperCritical) {
        double u = 2 * n2 * (P.sh_k - y / h * K.S_k) * s.A + 2 * n2 * (P.chm1_k2 - y / h * K.Cm1_k2) * s.Bh +
                   c * (y * y - y * h) / 2;
        double w = (P.ch - n2 * K.S_k / h) * s.A + (P.sh_k - n2 * K.Cm1_k2 / h) * s.Bh + c * (y - h / 2) / 2;
        return {u, w};
    }
    double om = cs.om;
    if (cs.eta_lambda) {
        double eta = *cs.eta_lambda, g = d.gamma_alpha;
        double u = (2 * n2 * (P.sh_k - eta * K.S_k) + g * (y - eta * h) - om * (g + 2 * n2 * K.S_k / h)) * s.A +
                   2 * n2 * (P.chm1_k2 - eta * K.Cm1_k2 - om * y / h * K.Cm1_k2) * s.Bh +
                   c / 2 * (y * y - h * h + om * (y * h + h * h));
        double w = (P.ch + g / 2 - om * (g / 2 + n2 * K.S_k / h)) * s.A + (P.sh_k - om * K.Cm1_k2 * n2 / h) * s.Bh +
                   c / 2 * (y + om * h / 2);
        return {u, w};
    }
    double mu = *cs.mu_lambda, q = om / n2;
    double ratio_sh = P.sh_k / K.S_k;
    double ch_sk = P.ch / K.S_k;
    double Ap = s.K1;
    double u = 2 * n2 * (P.chm1_k2 - mu * K.Cm1_k2 - om * K.Cm1_k2 * ratio_sh) * s.Bh + c / 2 * (y * y - mu * h * h) -
               om * h * h * c * ratio_sh + (c * (y - mu * h) - om * h * c * ratio_sh) * Ap;
    double w = (P.sh_k - om * K.Cm1_k2 * ch_sk) * s.Bh + c * y / 2 - q * h * h * c / 2 * ch_sk +
               (c / 2 - q * h * c / 2 * ch_sk) * Ap;
    return {u, w};
}

} // namespace detail

/// Samples u/dp and w/dp on `grid` (sorted, inside [0, h]).
inline std::vector<ProfileSample> profiles(const DerivedParams& d, const CoefficientSet& cs,
                                           const std::vector<double>& grid)
{
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > d.p.h || (i > 0 && grid[i] < grid[i - 1]))
            throw input_error("bad_grid", "grid must be sorted within [0, h]");
    }
    bool printed = cs.formulas == FormulaSet::Published && !cs.newtonian;
    std::vector<ProfileSample> out;
    out.reserve(grid.size());
    for (double y : grid) {
        if (printed) {
            auto [u, w] = detail::printed_profile(d, cs, y);
            out.push_back({y, u, w});
        } else {
            auto j = evaluate(d, cs.sol, y);
            out.push_back({y, j.u, j.w});
        }
    }
    return out;
}

inline std::vector<ProfileSample> profiles(const DerivedParams& d, Regime regime, double E_lambda,
                                           const std::vector<double>& grid, FormulaSet f = FormulaSet::Corrected)
{
    return profiles(d, coefficient_set(d, regime, E_lambda, f), grid);
}

inline std::vector<double> uniform_grid(double h, int n)
{
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i)
        g[i] = h * double(i) / double(n);
    g[n] = h;
    return g;
}

/// Largest wall and interior residuals of a general solution, each relative to the magnitude of its terms.
struct ResidualReport {
    double wall_u = 0.0;    ///< first bottom condition
    double wall_w = 0.0;    ///< second bottom condition
    double top = 0.0;       ///< max(|u(h)|, |w(h)|)
    double ode_u = 0.0;     ///< -u'' + 1 + 2N^2 w'
    double ode_w = 0.0;     ///< -Rc w'' + 4N^2 w - 2N^2 u'
};

inline ResidualReport residuals(const DerivedParams& d, const CoefficientSet& cs, int nodes = 101)
{
    double n2 = d.p.N * d.p.N, Rc = d.p.Rc, h = d.p.h;
    ResidualReport rep;
    auto rel = [](double res, std::initializer_list<double> terms) {
        double s = 1.0;
        for (double t : terms)
            s = std::max(s, std::abs(t));
        return std::abs(res) / s;
    };
    auto j0 = evaluate(d, cs.sol, 0.0);
    if (cs.regime == Regime::SuperCritical) {
        rep.wall_u = rel(j0.u, {j0.du * h});
        rep.wall_w = rel(j0.dw, {j0.w / h});
    } else {
        double E = cs.E_lambda;
        double a = j0.du, b = d.two_over_alpha * j0.w, e = E * j0.u;
        rep.wall_u = rel(a - b - e, {a, b, e});
        double f = Rc * j0.dw, g = d.two_n2_beta * j0.u;
        rep.wall_w = rel(f + g, {f, g});
    }
    auto jh = evaluate(d, cs.sol, h);
    rep.top = std::max(rel(jh.u, {jh.du * h}), rel(jh.w, {jh.dw * h}));
    for (double y : uniform_grid(h, nodes - 1)) {
        auto j = evaluate(d, cs.sol, y);
        double t1 = j.d2u, t2 = 2 * n2 * j.dw;
        rep.ode_u = std::max(rep.ode_u, rel(-t1 + 1.0 + t2, {t1, t2}));
        double s1 = Rc * j.d2w, s2 = 4 * n2 * j.w, s3 = 2 * n2 * j.du;
        rep.ode_w = std::max(rep.ode_w, rel(-s1 + s2 - s3, {s1, s2, s3}));
    }
    return rep;
}

} // namespace microrib
