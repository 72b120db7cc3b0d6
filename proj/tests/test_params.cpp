#include <catch_amalgamated.hpp>

#include <microrib/params.hpp>

#include <cmath>
#include <limits>
#include <sstream>

using namespace microrib;

namespace {

FluidWallParams desk(double nu_b_bar = 0.1) { return FluidWallParams::relative(0.3, 0.1, nu_b_bar, 1.0, 1.0); }

double ulps(double a, double b) { return std::abs(a - b) / (std::numeric_limits<double>::epsilon() * std::abs(b)); }

} // namespace

TEST_CASE("desk parameters have no violations", "[params]")
{
    auto p = FluidWallParams::absolute(0.3, 0.1, 10.1, 0.1 / (2 * 0.09 * 1.0), 1.0);
    auto rep = validate(p);
    CHECK(rep.ok());
    CHECK(validate(desk()).ok());
}

TEST_CASE("violations are reported by code", "[params]")
{
    auto big_n = FluidWallParams::absolute(0.8, 0.1, 1.2, 1.0, 1.0);
    CHECK(validate(big_n).has("N2_le_half"));
    auto zero_alpha = FluidWallParams::absolute(0.3, 0.1, 0.0, 1.0, 1.0);
    CHECK(validate(zero_alpha).has("alpha_positive"));
    auto n_alpha = FluidWallParams::absolute(0.3, 0.1, 20.0, 1.0, 1.0);
    CHECK(validate(n_alpha).has("N2_le_inv_alpha"));
    auto rc = FluidWallParams::absolute(0.3, -1.0, 2.0, 1.0, 1.0);
    CHECK(validate(rc).has("Rc_positive"));
    auto nan = FluidWallParams::absolute(std::nan(""), 0.1, 2.0, 1.0, 1.0);
    CHECK(validate(nan).has("non_finite"));
}

TEST_CASE("gamma bound and sign", "[params]")
{
    // gamma = 1/alpha - N^2 - N^2 beta
    auto p = FluidWallParams::absolute(0.3, 0.1, 2.0, 1.0, 1.0);
    double g = 0.5 - 0.09 - 0.09;
    CHECK(wall_gamma(p) == Catch::Approx(g).epsilon(1e-15));
    CHECK(validate(p).has("gamma_bound")); // 0.32^2 > 0.1 * 0.82
    auto q = FluidWallParams::absolute(0.3, 0.1, 5.0, 1.0, 1.0);
    CHECK_FALSE(validate(q).has("gamma_bound"));
    CHECK(validate(q).ok());
    CHECK(validate(desk()).has("gamma_negative"));
    CHECK(validate(desk()).ok());
}

TEST_CASE("Newtonian point is accepted with a conversion flag", "[params]")
{
    auto p = FluidWallParams::relative(0.0, 0.1, 0.1, 1.0, 1.0);
    auto rep = validate(p);
    CHECK(rep.ok());
    CHECK(rep.has("newtonian_wall_conversion"));
    auto d = derive(p);
    CHECK(d.k == 0.0);
    CHECK(d.newtonian);
    CHECK(d.C_N == 0.0);
}

TEST_CASE("derived scalars at the desk point", "[params]")
{
    auto d = derive(desk());
    CHECK(d.k == Catch::Approx(0.6 * std::sqrt(0.91 / 0.1)).epsilon(1e-15));
    CHECK(d.k == Catch::Approx(1.809972).epsilon(1e-6));
    CHECK(d.p.alpha == Catch::Approx(10.1).epsilon(1e-15));
    CHECK(d.C_alpha == Catch::Approx(10.1 / 9.1).epsilon(1e-14));
    CHECK(d.gamma_alpha == Catch::Approx(2 * (1 - 10.1 * 0.09) / 9.1).epsilon(1e-13));
    CHECK(d.C_N == Catch::Approx(0.09 / 0.91 * std::sinh(d.k) / d.k).epsilon(1e-14));
    CHECK(d.delta_slip == 1.0);
    CHECK_FALSE(d.alpha_one);
}

TEST_CASE("alpha = 1 selects the dedicated branch", "[params]")
{
    auto a = derive(FluidWallParams::absolute(0.3, 0.1, 1.0, 2.0, 1.0));
    CHECK(a.alpha_one);
    CHECK(a.p.nu_b_bar == 1.0);
    CHECK(std::isnan(a.gamma_alpha));
    auto r = derive(desk(1.0));
    CHECK(r.alpha_one);
    auto near = derive(FluidWallParams::absolute(0.3, 0.1, 1.0 + 1e-9, 2.0, 1.0));
    CHECK(near.alpha_one);
    auto off = derive(FluidWallParams::absolute(0.3, 0.1, 1.0 + 1e-6, 2.0, 1.0));
    CHECK_FALSE(off.alpha_one);
}

TEST_CASE("wall conversions round-trip", "[params]")
{
    // The alpha -> nu_b_bar map has relative condition c = alpha N^2/(1 - alpha N^2) and its inverse 1/c,
    // so a rounded intermediate costs about c/2 ulp one way and 1/(2c) the other.
    for (double N : {0.05, 0.2, 0.3, 0.5, 0.7})
        for (double nu : {0.05, 0.1, 0.2, 0.4, 0.9})
            for (double ds : {0.7, 1.0, 10.0}) {
                auto r = FluidWallParams::relative(N, 0.1, nu, ds, 1.0);
                auto a = FluidWallParams::absolute(N, 0.1, r.alpha, r.beta, 1.0);
                auto back = FluidWallParams::relative(N, 0.1, a.nu_b_bar, a.delta_slip, 1.0);
                double an2 = r.alpha * N * N, c = an2 / (1.0 - an2);
                CAPTURE(N, nu, ds, c);
                CHECK(ulps(a.delta_slip, ds) <= 2.0);
                CHECK(ulps(back.beta, r.beta) <= 2.0);
                CHECK(ulps(a.nu_b_bar, nu) <= 0.5 * c + 2.0);
                CHECK(ulps(back.alpha, r.alpha) <= 0.5 / c + 2.0);
                if (c <= 2.0)
                    CHECK(ulps(a.nu_b_bar, nu) <= 2.0);
                if (c >= 0.5)
                    CHECK(ulps(back.alpha, r.alpha) <= 2.0);
            }
}

TEST_CASE("derive is deterministic", "[params]")
{
    auto a = derive(desk()), b = derive(desk());
    CHECK(a.k == b.k);
    CHECK(a.C_alpha == b.C_alpha);
    CHECK(a.C_N == b.C_N);
    CHECK(a.gamma_alpha == b.gamma_alpha);
}

TEST_CASE("k and C_N decrease monotonically as N goes to 0", "[params]")
{
    double k_prev = INFINITY, c_prev = INFINITY;
    for (double N : {0.5, 0.3, 0.1, 0.03, 0.01, 1e-3, 1e-5, 0.0}) {
        auto d = derive(FluidWallParams::absolute(N, 0.2, 1.5, 1.0, 1.0));
        CHECK(d.k < k_prev);
        CHECK(d.C_N < c_prev);
        k_prev = d.k;
        c_prev = d.C_N;
    }
    CHECK(k_prev == 0.0);
    CHECK(c_prev == 0.0);
}

TEST_CASE("config reader", "[params]")
{
    std::istringstream in("# desk point\nN = 0.3\nRc = 0.1  # scale\n\nnu_b_bar = 0.1\ndelta_slip = 1\nh = 1\n");
    auto p = params_from_map(read_config(in));
    CHECK(p.alpha == Catch::Approx(10.1).epsilon(1e-15));
    CHECK(p.input == WallInput::Relative);

    auto code_of = [](const std::string& text) {
        std::istringstream s(text);
        try {
            params_from_map(read_config(s));
        } catch (const Error& e) {
            return e.code();
        }
        return std::string("none");
    };
    CHECK(code_of("N = 0.3\nRc = 0.1\nalpha = 2\nbeta = 1\nfoo = 1\n") == "unknown_key");
    CHECK(code_of("N = 0.3\nalpha = 2\nbeta = 1\n") == "missing_key");
    CHECK(code_of("N = 0.3\nRc = 0.1\nalpha = 2\nnu_b_bar = 0.1\nbeta = 1\n") == "wall_key");
    CHECK(code_of("N = 0.3\nRc = 0.1\nalpha = 2\ndelta_slip = 1\n") == "wall_key");
    CHECK(code_of("N 0.3\n") == "config_syntax");
    CHECK(code_of("N = 0.3x\n") == "bad_value");
    CHECK(code_of("N = 0.3\nRc = 0.1\nalpha = 2\nbeta = 1\n") == "none");
}

TEST_CASE("missing config file", "[params]")
{
    try {
        read_config_file("/nonexistent/microrib.cfg");
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(e.code() == "config_open");
        CHECK(e.kind() == ErrorKind::Input);
    }
}
