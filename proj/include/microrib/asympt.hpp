#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "coeffs.hpp"
#include "error.hpp"
#include "params.hpp"

namespace microrib {

/// Constants of the lambda^2 expansion of the printed coefficients.
/// Unprimed (alpha != 1) or primed (alpha = 1) depending on `primed`.
struct Ladder {
    bool primed = false;
    double A0 = 0, A1 = 0, B0 = 0, B1 = 0, L0 = 0, L1 = 0;
};

/// Expansion Theta_lambda = Theta0 - Cj E lambda^2 Theta1 + O(lambda^4) and its profile series.
struct SeriesSet {
    FormulaSet formulas = FormulaSet::Corrected;
    bool alpha_one = false;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double Cj = 0.0; ///< C_alpha, or C_N on the alpha = 1 branch
    double E = 0.0;
    bool has_ladder = false;
    Ladder ladder;
    std::vector<double> grid;
    std::vector<double> v0, v1, varpi0, varpi1;

    /// Theta0 - Cj E lambda^2 Theta1
    double theta_approx(double lambda) const { return theta0 - Cj * E * lambda * lambda * theta1; }
    /// Second derivative of the approximation at lambda = 0.
    double second_derivative() const { return -2.0 * Cj * E * theta1; }
};

namespace detail {

inline Ladder printed_ladder(const DerivedParams& d)
{
    const auto& K = d.K;
    double N2 = n2_of(d), N4 = N2 * N2, h = d.p.h, k = d.k, r = d.r, S = K.S, C = K.C;
    Ladder l;
    if (!d.alpha_one) {
        double g = d.gamma_alpha;
        l.A0 = h * (4 * N4 * (1 - C) + r * k * k) - k * S * (r - 2 * N2 * h * h);
        l.A1 = -h * (4 * N4 * (1 - C) + r * k * k / 2) - 2 * N2 * h * h * k * S - (1 - C) * N2 / h * r;
        l.B0 = 2 * N2 * h * (g * k * h + 2 * N2 * S) + k * (r - 2 * N2 * h * h) * (C + g / 2);
        l.B1 = -g / 2 * k * (2 * N2 * h * h + r) - S * (4 * N4 * h + r * N2 / h) + 2 * N2 * h * h * k * C;
        l.L0 = 1.0 / ((g / 2 + C) * (4 * N4 * (1 - C) + r * k * k) + 2 * N2 * S * (g * k * h + 2 * N2 * S));
        l.L1 = 4 * N4 * (1 - C) * (g + C + N2 / (k * h) * S) + r * k * k * (g / 2 + N2 / (k * h) * S) +
               2 * N2 * (S - N2 / (k * h) * (1 - C)) * (g * k * h + 2 * N2 * S);
        return l;
    }
    double cth = C / S;
    l.primed = true;
    l.A0 = h * (4 * N4 * (1 - C) + r * k * k) - k * S * (r - 2 * N2 * h * h);
    l.A1 = h * (4 * N4 * (1 - C) + 2 * N2 * h * k * S) + r * k * cth * (1 - C + k * k * h * h / (2 * N2));
    l.B0 = 2 * N2 * h * h + r;
    l.B1 = 2 * N2 * h * h + cth * h * k / N2 * r;
    l.L0 = 1.0 / (4 * N4 * (1 - C) + r * k * k + 4 * N2 * h * k * S);
    l.L1 = 4 * N4 * (1 - C) + cth * k * k * k * h / N2 * r + 4 * k * h * N2 * S;
    return l;
}

/// Printed Theta0, Theta1 and profile series.
inline void printed_series(const DerivedParams& d, SeriesSet& s)
{
    const auto& K = d.K;
    const auto& l = s.ladder;
    double N2 = n2_of(d), h = d.p.h, k = d.k, c = 1.0 / (1.0 - N2), S = K.S, C = K.C, h3 = h * h * h;
    std::size_t m = s.grid.size();
    s.v0.assign(m, 0.0);
    s.v1.assign(m, 0.0);
    s.varpi0.assign(m, 0.0);
    s.varpi1.assign(m, 0.0);
    if (!d.alpha_one) {
        double g = d.gamma_alpha;
        double LA0 = l.L0 * l.A0, LB0 = l.L0 * l.B0;
        double LA1 = l.L0 * (l.A1 + l.L0 * l.L1 * l.A0), LB1 = l.L0 * (l.B1 + l.L0 * l.L1 * l.B0);
        double X = 2 * N2 * (K.Cm1_k2 - h * K.S_k) - g / 2 * h * h;
        double Y = 2 * N2 * k * K.shmxch_k3();
        s.theta0 = c * h3 / 3 - c / 2 * (X * LA0 + Y * LB0);
        s.theta1 = 3 * c * h3 / 4 -
                   c / 2 * (X * LA1 + (-2 * N2 * K.S_k * (1 - h) - g * h * (1 - h)) * LA0 + Y * LB1 +
                            N2 * h * k * K.Cm1_k2 * LB0);
        for (std::size_t i = 0; i < m; ++i) {
            double y = s.grid[i];
            kernels::PointKernels P(k, y);
            double a = 2 * N2 * (P.sh_k - K.S_k) + g * (y - h);
            double b = 2 * N2 * k * (P.chm1_k2 - K.Cm1_k2);
            s.v0[i] = c / 2 * (-a * LA0 - b * LB0 + y * y - h * h);
            s.v1[i] = c / 2 * (-(2 * N2 * K.S_k / h + g) * (h - 1) * LA0 + 2 * N2 * k / h * K.Cm1_k2 * (y - h) * LB0 -
                               a * LA1 - b * LB1 + y * h + h * h);
            s.varpi0[i] = c / 2 * (-(P.ch + g) * LA0 - P.sh * LB0 + y);
            s.varpi1[i] = c / 2 * (-(P.ch + g) * LA1 + (g / 2 + N2 * K.S_k / h) * LA0 - P.sh * LB1 +
                                   N2 * k * K.Cm1_k2 / h * LB0 + h / 2);
        }
        return;
    }
    double LA0 = l.L0 * l.A0, LB0 = l.L0 * l.B0;
    double LA1 = l.L0 * (l.A1 - l.L0 * l.L1 * l.A0), LB1 = l.L0 * (l.B1 - l.L0 * l.L1 * l.B0);
    double sk = k * k * K.shmxch_k3(); // sinh(kh)/k - h cosh(kh)
    s.theta0 = c * h3 / 3 - h * h * c / 2 * LA0 + N2 * c * sk * LB0;
    s.theta1 = -h * h * c * (h / 2 - K.T2) + h * h * c / 2 * LA1 + h * c * (h - K.T2) * LA0 - N2 * c * sk * LB1 -
               N2 * c * (-h * C + h + k * k * K.Cm1_k2 * K.Cm1_k2 / K.S_k) * LB0;
    for (std::size_t i = 0; i < m; ++i) {
        double y = s.grid[i];
        kernels::PointKernels P(k, y);
        double chC = k * k * (P.chm1_k2 - K.Cm1_k2); // cosh(ky) - cosh(kh)
        double rs = P.sh_k / K.S_k;                 // sinh(ky)/sinh(kh)
        double rc = P.ch / S;                       // cosh(ky)/sinh(kh)
        s.v0[i] = -N2 * c * chC * LB0 + c / 2 * (y * y - h * h) - c * (y - h) * LA0;
        s.v1[i] = -N2 * c * chC * LB1 - N2 * c * (1 - C) * rs * LB0 + h * h * c * (-0.5 + rs) - c * (y - h) * LA1 -
                  LA0 * (-1 + rs);
        s.varpi0[i] = -k * c / 2 * P.sh * LB0 + c * y / 2 - c / 2 * LA0;
        s.varpi1[i] = -k * c / 2 * P.sh * LB1 + k * c / 2 * (1 - C) * rc * LB0 + k * h * h * c / (2 * N2) * rc -
                      c / 2 * LA1 - k * h * c / (2 * N2) * rc * LA0;
    }
}

} // namespace detail

/// Expansion of Theta_lambda and of the profiles in powers of lambda^2.
/// Corrected: Theta1 and v1 are exact derivatives with respect to eta (or mu) at 1, by complex step.
inline SeriesSet series_set(const DerivedParams& d, double E, const std::vector<double>& grid,
                            FormulaSet f = FormulaSet::Corrected)
{
    if (!(E >= 0.0) || !std::isfinite(E))
        throw input_error("negative_E", "E must be finite and >= 0");
    SeriesSet s;
    s.formulas = f;
    s.alpha_one = d.alpha_one;
    s.E = E;
    s.grid = grid;
    s.Cj = d.alpha_one ? d.C_N : d.C_alpha;
    if (!d.newtonian) {
        s.has_ladder = true;
        s.ladder = detail::printed_ladder(d);
    }
    if (f == FormulaSet::Published && !d.newtonian) {
        detail::printed_series(d, s);
        return s;
    }

    using cplx = std::complex<double>;
    const double step = 1e-20;
    const cplx one(1.0, 0.0), pert(1.0, step), dom(0.0, -step);
    GeneralSolution<cplx> s0, s1;
    double sign = 1.0;
    if (d.newtonian) {
        s0 = detail::newtonian<cplx>(d, one, cplx(0.0), f);
        s1 = detail::newtonian<cplx>(d, pert, dom, f);
    } else if (!d.alpha_one) {
        s0 = detail::alpha_neq1<cplx>(d, one, cplx(0.0));
        s1 = detail::alpha_neq1<cplx>(d, pert, dom);
    } else {
        double n2 = d.p.N * d.p.N;
        s0 = detail::alpha_eq1<cplx>(d, one, cplx(0.0));
        s1 = detail::alpha_eq1<cplx>(d, pert, dom / n2);
        sign = -1.0;
    }
    s.theta0 = detail::theta_structural(d, s0).real();
    s.theta1 = sign * detail::theta_structural(d, s1).imag() / step;
    for (double y : grid) {
        auto j0 = evaluate(d, s0, y);
        auto j1 = evaluate(d, s1, y);
        s.v0.push_back(j0.u.real());
        s.varpi0.push_back(j0.w.real());
        s.v1.push_back(-sign * j1.u.imag() / step);
        s.varpi1.push_back(-sign * j1.w.imag() / step);
    }
    return s;
}

/// Pressure terms p0 and p1 as multiples of y1 (1 - y1).
struct PressureSeries {
    double p0_coef = 0.0; ///< S/(2 Theta0)
    double p1_coef = 0.0; ///< (Theta1/Theta0) p0_coef
    double lambda = 0.0;
    double Cj = 0.0;
    double E = 0.0;

    double p0(double y1) const { return p0_coef * y1 * (1.0 - y1); }
    double p1(double y1) const { return p1_coef * y1 * (1.0 - y1); }
    /// p0 + Cj E lambda^2 p1
    double p(double y1) const { return p0(y1) + Cj * E * lambda * lambda * p1(y1); }
};

inline PressureSeries pressure_series(double theta0, double theta1, double Cj, double E, double lambda, double S)
{
    if (!(std::abs(theta0) >= 1e-14))
        throw input_error("theta0_zero", "|Theta0| < 1e-14");
    PressureSeries ps;
    ps.p0_coef = S / (2.0 * theta0);
    ps.p1_coef = theta1 / theta0 * ps.p0_coef;
    ps.lambda = lambda;
    ps.Cj = Cj;
    ps.E = E;
    return ps;
}

} // namespace microrib
