#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "coeffs.hpp"
#include "error.hpp"
#include "params.hpp"

extern "C" void dgbsv_(const int* n, const int* kl, const int* ku, const int* nrhs, double* ab, const int* ldab,
                       int* ipiv, double* b, const int* ldb, int* info);

namespace microrib {

/// Finite-difference solution of the reduced system per unit pressure gradient.
struct BvpSolution {
    std::vector<double> grid;
    std::vector<double> u1;
    std::vector<double> w2;
    double theta_numeric = 0.0;    ///< -int u1 by composite Simpson
    double theta_richardson = 0.0; ///< extrapolated from n and n/2
    double error_estimate = 0.0;   ///< |theta(n) - theta(n/2)|/3
    std::vector<double> u1_richardson; ///< extrapolated nodal values on every second node
    std::vector<double> w2_richardson;
};

namespace detail {

/// Row-wise banded matrix in LAPACK general band storage.
class BandMatrix {
public:
    BandMatrix(int n, int kl, int ku) : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), ab_(std::size_t(ld_) * n, 0.0) {}

    void add(int i, int j, double v) { ab_[std::size_t(kl_ + ku_ + i - j) + std::size_t(j) * ld_] += v; }

    /// Solves in place; returns LAPACK info.
    int solve(std::vector<double>& b)
    {
        std::vector<int> ipiv(n_);
        int nrhs = 1, info = 0;
        dgbsv_(&n_, &kl_, &ku_, &nrhs, ab_.data(), &ld_, ipiv.data(), b.data(), &n_, &info);
        return info;
    }

private:
    int n_, kl_, ku_, ld_;
    std::vector<double> ab_;
};

inline double simpson(const std::vector<double>& f, double dx)
{
    std::size_t n = f.size() - 1;
    double s = f.front() + f.back();
    for (std::size_t i = 1; i < n; ++i)
        s += (i % 2 ? 4.0 : 2.0) * f[i];
    return s * dx / 3.0;
}

inline BvpSolution bvp_single(const DerivedParams& d, Regime regime, double E_lambda, int n)
{
    double n2 = d.p.N * d.p.N, Rc = d.p.Rc, h = d.p.h, dy = h / n;
    int M = 2 * (n + 2);
    auto col = [](int node, int comp) { return 2 * (node + 1) + comp; };
    BandMatrix A(M, 5, 5);
    std::vector<double> b(M, 0.0);
    double i2 = 1.0 / (dy * dy), i1 = 1.0 / (2.0 * dy);

    // wall rows use the ghost node -1
    if (regime == Regime::SuperCritical) {
        A.add(0, col(0, 0), 1.0);
        A.add(1, col(1, 1), i1);
        A.add(1, col(-1, 1), -i1);
    } else {
        A.add(0, col(1, 0), i1);
        A.add(0, col(-1, 0), -i1);
        A.add(0, col(0, 1), -d.two_over_alpha);
        A.add(0, col(0, 0), -E_lambda);
        A.add(1, col(1, 1), Rc * i1);
        A.add(1, col(-1, 1), -Rc * i1);
        A.add(1, col(0, 0), d.two_n2_beta);
    }
    for (int i = 0; i < n; ++i) {
        int ru = col(i, 0), rw = col(i, 1);
        A.add(ru, col(i + 1, 0), -i2);
        A.add(ru, col(i, 0), 2.0 * i2);
        A.add(ru, col(i - 1, 0), -i2);
        A.add(ru, col(i + 1, 1), 2.0 * n2 * i1);
        A.add(ru, col(i - 1, 1), -2.0 * n2 * i1);
        b[ru] = -1.0;
        A.add(rw, col(i + 1, 1), -Rc * i2);
        A.add(rw, col(i, 1), 2.0 * Rc * i2 + 4.0 * n2);
        A.add(rw, col(i - 1, 1), -Rc * i2);
        A.add(rw, col(i + 1, 0), -2.0 * n2 * i1);
        A.add(rw, col(i - 1, 0), 2.0 * n2 * i1);
    }
    A.add(col(n, 0), col(n, 0), 1.0);
    A.add(col(n, 1), col(n, 1), 1.0);

    if (A.solve(b) != 0)
        throw solver_error("singular_system", "finite-difference boundary-value system");

    BvpSolution s;
    s.grid = uniform_grid(h, n);
    s.u1.resize(n + 1);
    s.w2.resize(n + 1);
    for (int i = 0; i <= n; ++i) {
        s.u1[i] = b[col(i, 0)];
        s.w2[i] = b[col(i, 1)];
    }
    s.theta_numeric = -simpson(s.u1, dy);
    return s;
}

} // namespace detail

/// Second-order finite-difference solve of the reduced system with the wall conditions of `regime`.
/// `n` intervals, even and at least 64.
inline BvpSolution bvp_solve(const DerivedParams& d, Regime regime, double E_lambda, int n)
{
    if (n < 64 || n % 4 != 0)
        throw input_error("bad_resolution", "n must be a multiple of 4 and >= 64");
    if (regime == Regime::SubCritical || regime == Regime::SuperCritical)
        E_lambda = 0.0;
    detail::check_regime(d, regime, E_lambda);
    auto fine = detail::bvp_single(d, regime, E_lambda, n);
    auto coarse = detail::bvp_single(d, regime, E_lambda, n / 2);
    fine.theta_richardson = (4.0 * fine.theta_numeric - coarse.theta_numeric) / 3.0;
    fine.error_estimate = std::abs(fine.theta_numeric - coarse.theta_numeric) / 3.0;
    for (int i = 0; i <= n / 2; ++i) {
        fine.u1_richardson.push_back((4.0 * fine.u1[2 * i] - coarse.u1[i]) / 3.0);
        fine.w2_richardson.push_back((4.0 * fine.w2[2 * i] - coarse.w2[i]) / 3.0);
    }
    return fine;
}

/// One parameter point of the closed-form versus finite-difference comparison.
struct OracleCase {
    Regime regime = Regime::CriticalGeneral;
    FluidWallParams params;
    double E_lambda = 0.0;
};

struct OracleComparison {
    OracleCase c;
    double theta_closed = 0.0;
    double theta_oracle = 0.0;     ///< Simpson value at n
    double theta_err = 0.0;        ///< against the Simpson value at n
    double theta_err_extrap = 0.0; ///< against the extrapolated value
    double profile_err = 0.0;      ///< sup |closed - oracle| / sup |oracle|, worst of u1 and w2, at n
    double profile_err_extrap = 0.0;
    double wall = 0.0;             ///< largest wall residual of the closed form
    double ode = 0.0;              ///< largest interior residual of the closed form
};

/// Random valid points of one regime; deterministic for a given seed.
inline std::vector<OracleCase> random_cases(Regime regime, int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed + 7919u * std::uint64_t(regime));
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto between = [&](double a, double b) { return a + (b - a) * U(rng); };
    auto log_between = [&](double a, double b) { return a * std::pow(b / a, U(rng)); };
    std::vector<OracleCase> out;
    int tries = 0;
    while (int(out.size()) < count) {
        if (++tries > 1000 * count)
            throw solver_error("sampling_failed", "no valid parameter points found");
        OracleCase c;
        c.regime = regime;
        double N = between(0.05, 0.7), Rc = log_between(0.05, 1.0), ds = log_between(0.3, 5.0);
        double h = between(0.5, 1.5);
        bool one = regime == Regime::CriticalAlphaOne || (regime == Regime::SubCritical && out.size() % 4 == 3);
        double nu = one ? 1.0 : between(0.05, 0.95);
        c.params = FluidWallParams::relative(N, Rc, nu, ds, h);
        auto rep = validate(c.params);
        if (!rep.ok() || rep.has("gamma_negative"))
            continue;
        auto d = derive(c.params);
        if (regime == Regime::CriticalGeneral)
            c.E_lambda = between(0.0, 10.0);
        else if (regime == Regime::CriticalAlphaOne)
            c.E_lambda = between(0.0, std::min(10.0, 0.9 / d.C_N));
        out.push_back(c);
    }
    return out;
}

/// Compares closed-form Theta and profiles with the finite-difference solution at `n` intervals.
inline OracleComparison compare_with_oracle(const OracleCase& c, int n, FormulaSet f = FormulaSet::Corrected)
{
    OracleComparison r;
    r.c = c;
    auto d = derive(c.params);
    auto cs = coefficient_set(d, c.regime, c.E_lambda, f);
    auto bvp = bvp_solve(d, c.regime, c.E_lambda, n);
    r.theta_closed = cs.theta;
    r.theta_oracle = bvp.theta_numeric;
    r.theta_err = std::abs(cs.theta - bvp.theta_numeric) / std::abs(bvp.theta_numeric);
    r.theta_err_extrap = std::abs(cs.theta - bvp.theta_richardson) / std::abs(bvp.theta_richardson);
    auto closed = profiles(d, cs, bvp.grid);
    auto sup_err = [&](auto get_closed, const std::vector<double>& ref, int stride) {
        double diff = 0.0, mag = 0.0;
        for (std::size_t i = 0; i < ref.size(); ++i) {
            diff = std::max(diff, std::abs(get_closed(closed[i * stride]) - ref[i]));
            mag = std::max(mag, std::abs(ref[i]));
        }
        return mag > 0.0 ? diff / mag : diff;
    };
    auto u = [](const ProfileSample& s) { return s.u1_over_dp; };
    auto w = [](const ProfileSample& s) { return s.w2_over_dp; };
    r.profile_err = std::max(sup_err(u, bvp.u1, 1), sup_err(w, bvp.w2, 1));
    r.profile_err_extrap = std::max(sup_err(u, bvp.u1_richardson, 2), sup_err(w, bvp.w2_richardson, 2));
    auto res = residuals(d, cs, 101);
    r.wall = std::max({res.wall_u, res.wall_w, res.top});
    r.ode = std::max(res.ode_u, res.ode_w);
    return r;
}

} // namespace microrib
