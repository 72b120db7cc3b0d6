#include <catch_amalgamated.hpp>

#include <microrib/asympt.hpp>

#include <cmath>
#include <vector>

using namespace microrib;

namespace {

DerivedParams desk(double nu_b_bar) { return derive(FluidWallParams::relative(0.3, 0.1, nu_b_bar, 1.0, 1.0)); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double second_difference(const DerivedParams& d, double E, FormulaSet f, double step = 1e-3)
{
    auto r = critical_regime(d);
    auto th = [&](double l) { return theta(d, r, E * l * l, f); };
    return (th(step) - 2.0 * th(0.0) + th(-step)) / (step * step);
}

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    double n = double(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double a = std::log(x[i]), b = std::log(y[i]);
        sx += a;
        sy += b;
        sxx += a * a;
        sxy += a * b;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

TEST_CASE("published expansion reproduces the tabulated second derivatives", "[asympt]")
{
    auto a = series_set(desk(0.1), 10.0, {}, FormulaSet::Published);
    CHECK(a.second_derivative() == Catch::Approx(-17.7346).margin(5e-5));
    CHECK(second_difference(desk(0.1), 10.0, FormulaSet::Published) == Catch::Approx(-17.73).margin(0.01));
    auto b = series_set(desk(1.0), 10.0, {}, FormulaSet::Published);
    CHECK(b.alpha_one);
    CHECK(b.second_derivative() == Catch::Approx(-2.97109).margin(5e-6));
    CHECK(second_difference(desk(1.0), 10.0, FormulaSet::Published) == Catch::Approx(-2.9711).margin(0.001));
}

TEST_CASE("corrected expansion matches the second difference of Theta", "[asympt]")
{
    for (double nu : {0.1, 1.0}) {
        auto d = desk(nu);
        auto s = series_set(d, 10.0, {});
        CAPTURE(nu);
        CHECK(rel(second_difference(d, 10.0, FormulaSet::Corrected), s.second_derivative()) <= 1e-3);
        CHECK(s.theta0 == theta(d, critical_regime(d), 0.0));
    }
}

TEST_CASE("expansion remainder is fourth order", "[asympt]")
{
    std::vector<double> ls{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
    for (double nu : {0.1, 1.0}) {
        auto d = desk(nu);
        auto s = series_set(d, 10.0, {});
        std::vector<double> rem;
        for (double l : ls)
            rem.push_back(std::abs(theta(d, critical_regime(d), 10.0 * l * l) - s.theta_approx(l)));
        CAPTURE(nu);
        CHECK(loglog_slope(ls, rem) == Catch::Approx(4.0).margin(0.2));
    }
}

TEST_CASE("leading profiles are the lambda = 0 profiles", "[asympt]")
{
    for (double nu : {0.1, 1.0}) {
        auto d = desk(nu);
        auto grid = uniform_grid(1.0, 50);
        auto s = series_set(d, 10.0, grid);
        auto p = profiles(d, critical_regime(d), 0.0, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::abs(s.v0[i] - p[i].u1_over_dp) <= 1e-14);
            CHECK(std::abs(s.varpi0[i] - p[i].w2_over_dp) <= 1e-14);
        }
    }
}

TEST_CASE("profile series remainder is fourth order", "[asympt]")
{
    std::vector<double> ls{1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
    auto grid = uniform_grid(1.0, 40);
    for (double nu : {0.1, 1.0}) {
        auto d = desk(nu);
        auto s = series_set(d, 10.0, grid);
        std::vector<double> ru, rw;
        for (double l : ls) {
            double el = 10.0 * l * l;
            auto p = profiles(d, critical_regime(d), el, grid);
            double mu = 0, mw = 0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                mu = std::max(mu, std::abs(p[i].u1_over_dp - s.v0[i] - s.Cj * el * s.v1[i]));
                mw = std::max(mw, std::abs(p[i].w2_over_dp - s.varpi0[i] - s.Cj * el * s.varpi1[i]));
            }
            ru.push_back(mu);
            rw.push_back(mw);
        }
        CAPTURE(nu);
        CHECK(loglog_slope(ls, ru) == Catch::Approx(4.0).margin(0.2));
        CHECK(loglog_slope(ls, rw) == Catch::Approx(4.0).margin(0.2));
    }
}

TEST_CASE("E = 0 removes the first-order term", "[asympt]")
{
    auto s = series_set(desk(0.1), 0.0, {});
    CHECK(s.theta_approx(0.5) == s.theta0);
    CHECK(s.second_derivative() == 0.0);
}

TEST_CASE("Newtonian expansion", "[asympt]")
{
    // Theta(E) = -1/6 + (E/2 + 1)/(2(1 + E)) at h = 1, so dTheta/dE at 0 = -1/4 and Cj = h
    auto d = derive(FluidWallParams::relative(0.0, 0.1, 0.1, 1.0, 1.0));
    auto s = series_set(d, 2.0, {});
    CHECK(s.theta0 == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(s.Cj == 1.0);
    CHECK(s.Cj * s.theta1 == Catch::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(s.has_ladder);
}

TEST_CASE("printed ladders", "[asympt]")
{
    auto a = series_set(desk(0.1), 10.0, {}, FormulaSet::Published);
    CHECK(a.has_ladder);
    CHECK_FALSE(a.ladder.primed);
    auto b = series_set(desk(1.0), 10.0, {}, FormulaSet::Published);
    CHECK(b.ladder.primed);
    for (double v : {a.ladder.A0, a.ladder.A1, a.ladder.B0, a.ladder.B1, a.ladder.L0, a.ladder.L1, b.ladder.A0,
                     b.ladder.B0, b.ladder.L0, b.ladder.L1})
        CHECK(std::isfinite(v));
}

TEST_CASE("pressure split", "[asympt]")
{
    auto z = pressure_series(0.3, 0.2, 1.1, 10.0, 0.1, 0.0);
    CHECK(z.p0(0.3) == 0.0);
    CHECK(z.p1(0.3) == 0.0);

    auto q = pressure_series(1.0 / 12.0, 0.5, 1.0, 1.0, 0.0, 1.0);
    double load = 0.0;
    int m = 1000;
    for (int i = 0; i < m; ++i)
        load += q.p0((i + 0.5) / m) / m;
    CHECK(load == Catch::Approx(1.0).epsilon(1e-6));

    double t0 = 0.334, t1 = 0.226;
    auto s = pressure_series(t0, t1, 1.1, 10.0, 0.05, 2.0);
    for (double y : {0.1, 0.25, 0.5, 0.9})
        CHECK(std::abs(s.p1(y) * t0 - s.p0(y) * t1) <= 1e-14);
    CHECK(s.p(0.5) == Catch::Approx(s.p0(0.5) + 1.1 * 10.0 * 0.0025 * s.p1(0.5)).epsilon(1e-15));

    try {
        pressure_series(1e-15, 1.0, 1.0, 1.0, 0.1, 1.0);
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == "theta0_zero");
    }
}
