#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "error.hpp"

namespace microrib {

/// Pressure of the constant-coefficient Reynolds problem with p(0) = p(1) = 0.
struct PressureField {
    double theta = 0.0;
    double S = 0.0;
    double coef = 0.0; ///< p(y1) = coef y1 (1 - y1), coef = S/(2 Theta)
    double load = 0.0; ///< int_0^1 p = S/(12 Theta)

    double p(double y1) const { return coef * y1 * (1.0 - y1); }
    double dp(double y1) const { return coef * (1.0 - 2.0 * y1); }
};

inline PressureField solve_pressure(double theta, double S)
{
    if (!(std::abs(theta) >= 1e-14))
        throw input_error("theta_zero", "|Theta| < 1e-14");
    PressureField f;
    f.theta = theta;
    f.S = S;
    f.coef = S / (2.0 * theta);
    f.load = S / (12.0 * theta);
    return f;
}

/// Max over interior hat functions of |int Theta p' phi_i' - int S phi_i| / h_i on a uniform grid of `m` points.
/// `p` is sampled at the nodes; the left-hand side is exact for the piecewise-linear interpolant.
inline double weak_residual(const std::function<double(double)>& p, double theta, double S, int m)
{
    if (m < 11)
        throw input_error("bad_grid", "test grid needs at least 11 points");
    double dx = 1.0 / (m - 1), r = 0.0;
    double pl = p(0.0), pc = p(dx);
    for (int i = 1; i < m - 1; ++i) {
        double pr = p((i + 1) * dx);
        double a = theta * (2.0 * pc - pl - pr) / dx;
        r = std::max(r, std::abs(a - S * dx) / dx);
        pl = pc;
        pc = pr;
    }
    return r;
}

inline double weak_residual(const PressureField& f, int m)
{
    return weak_residual([&](double y) { return f.p(y); }, f.theta, f.S, m);
}

} // namespace microrib
