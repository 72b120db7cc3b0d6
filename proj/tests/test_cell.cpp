#include <catch_amalgamated.hpp>

#include <microrib/cell.hpp>

#include <cmath>
#include <cstdio>
#include <functional>
#include <fstream>
#include <string>

using namespace microrib;

namespace {

std::string code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "none";
}

RibletProfile flat(int n)
{
    RibletProfile p;
    p.n = n;
    p.samples.assign(n + 1, 0.0);
    p.dsamples.assign(n + 1, 0.0);
    return p;
}

} // namespace

TEST_CASE("V-shape is the unit triangle wave", "[cell]")
{
    auto p = make_riblet(RibletKind::VShape, 32);
    CHECK(p.peak() == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(p.samples.front() == 0.0);
    CHECK(p.samples.back() == 0.0);
    CHECK(p.norm == Catch::Approx(1.0).epsilon(1e-10));
    for (int i = 1; i < p.n; ++i)
        if (i != p.n / 2)
            CHECK(std::abs(p.dsamples[i]) == 1.0);
}

TEST_CASE("built-in profiles are normalized, periodic and nonnegative", "[cell]")
{
    for (auto k : {RibletKind::VShape, RibletKind::UShape, RibletKind::Blade}) {
        auto p = make_riblet(k, 64);
        CAPTURE(to_string(k));
        CHECK(p.norm == Catch::Approx(1.0).epsilon(1e-10));
        CHECK(p.samples.front() == p.samples.back());
        CHECK(*std::min_element(p.samples.begin(), p.samples.end()) == 0.0);
        // analytic slopes integrate to the normalization on a fine grid
        auto f = make_riblet(k, 1 << 16);
        double s = 0.0;
        for (int i = 0; i < f.n; ++i)
            s += 0.5 * (f.dsamples[i] * f.dsamples[i] + f.dsamples[i + 1] * f.dsamples[i + 1]) / f.n;
        CHECK(s == Catch::Approx(1.0).epsilon(k == RibletKind::Blade ? 1e-9 : 1e-3));
    }
}

TEST_CASE("U-shape and blade peaks fit the published axis windows", "[cell]")
{
    double u = make_riblet(RibletKind::UShape, 64).peak();
    double b = make_riblet(RibletKind::Blade, 64).peak();
    CHECK(u > 0.3);
    CHECK(u < 0.35);
    CHECK(b > 0.14);
    CHECK(b < 0.18);
}

TEST_CASE("profile errors", "[cell]")
{
    CHECK(code_of([] { make_riblet(RibletKind::VShape, 8); }) == "bad_samples");
    CHECK(code_of([] { custom_riblet(std::vector<double>(33, 0.2)); }) == "not_normalizable");
    std::vector<double> open(33);
    for (int i = 0; i <= 32; ++i)
        open[i] = i / 32.0;
    CHECK(code_of([&] { custom_riblet(open); }) == "not_periodic");
    CHECK(code_of([] { load_riblet("/nonexistent/profile.txt"); }) == "profile_open");
}

TEST_CASE("custom profile from samples", "[cell]")
{
    int n = 64;
    std::vector<double> psi(n + 1);
    for (int i = 0; i <= n; ++i)
        psi[i] = std::cos(2 * M_PI * i / n);
    auto p = custom_riblet(psi);
    CHECK(p.norm == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(p.samples.front() == Catch::Approx(p.peak()));
    // the normalized central-difference slope is a sine of amplitude sqrt(2)
    double amp = 0.0;
    for (double d : p.dsamples)
        amp = std::max(amp, std::abs(d));
    CHECK(amp == Catch::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("profile file reader", "[cell]")
{
    std::string path = "microrib_profile_test.txt";
    {
        std::ofstream out(path);
        out << "# z1 psi\n";
        for (int i = 0; i <= 32; ++i)
            out << i / 32.0 << ' ' << 0.5 - std::abs(i / 32.0 - 0.5) << '\n';
    }
    auto p = load_riblet(path);
    CHECK(p.n == 32);
    // central differences vanish at the two kinks
    CHECK(p.peak() == Catch::Approx(0.5 / std::sqrt(1.0 - 2.0 / 32.0)).epsilon(1e-12));
    {
        std::ofstream out(path);
        out << "0 0\n0.5\n";
    }
    CHECK(code_of([&] { load_riblet(path); }) == "profile_syntax");
    {
        std::ofstream out(path);
        for (int i = 0; i <= 32; ++i)
            out << (i * i) / 1024.0 << " 0\n";
    }
    CHECK(code_of([&] { load_riblet(path); }) == "profile_grid");
    std::remove(path.c_str());
}

TEST_CASE("flat data gives zero energies", "[cell]")
{
    auto p = flat(16);
    auto s = solve_stokes_cell(p, 1.0, 6.0, 1);
    CHECK(s.E_lambda == 0.0);
    auto l = solve_laplace_cell(p, 1.0, 6.0, 1);
    CHECK(l.F_lambda == 0.0);
}

TEST_CASE("energies scale with lambda squared", "[cell]")
{
    auto p = make_riblet(RibletKind::VShape, 16);
    auto a = solve_stokes_cell(p, 1.0, 6.0, 1), b = solve_stokes_cell(p, 2.0, 6.0, 1);
    CHECK(b.E_lambda / a.E_lambda == Catch::Approx(4.0).epsilon(1e-10));
    auto c = solve_laplace_cell(p, 1.0, 6.0, 1), d = solve_laplace_cell(p, 2.0, 6.0, 1);
    CHECK(d.F_lambda / c.F_lambda == Catch::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("discrete divergence and energy identities", "[cell]")
{
    for (auto k : {RibletKind::VShape, RibletKind::Blade}) {
        auto s = solve_stokes_cell(make_riblet(k, 32), 1.0, 6.0, 2);
        for (const auto& l : s.convergence) {
            CAPTURE(to_string(k), l.level);
            CHECK(l.div_residual <= 1e-8);
            CHECK(std::abs(l.energy - l.energy_quadform) <= 1e-10 * l.energy);
        }
    }
    auto f = solve_laplace_cell(make_riblet(RibletKind::VShape, 32), 1.0, 6.0, 2);
    for (const auto& l : f.convergence)
        CHECK(std::abs(l.energy - l.energy_quadform) <= 1e-10 * l.energy);
}

TEST_CASE("truncation height barely matters", "[cell]")
{
    auto p = make_riblet(RibletKind::VShape, 32);
    double e4 = solve_stokes_cell(p, 1.0, 4.0, 1).E_lambda;
    double e8 = solve_stokes_cell(p, 1.0, 8.0, 1).E_lambda;
    CHECK(std::abs(e8 - e4) <= 0.01 * e8);
}

TEST_CASE("V-shape energy converges near the tabulated value", "[cell]")
{
    auto s = solve_stokes_cell(make_riblet(RibletKind::VShape, 32), 1.0, 6.0, 2);
    CHECK(s.converged);
    CHECK(s.E_lambda == Catch::Approx(12.12).epsilon(0.05));
    CHECK(s.convergence.size() == 2);
    CHECK(s.convergence[1].nx == 64);
    CHECK(s.mesh_stats.M_trunc == 6.0);
    CHECK(s.mesh_stats.elements == s.convergence[1].elements);
    CHECK(s.field.z1.size() == std::size_t(64 * (s.field.nz + 1)));
    CHECK_NOTHROW(require_converged(s));
}

TEST_CASE("Laplace energy self-converges", "[cell]")
{
    auto s = solve_laplace_cell(make_riblet(RibletKind::VShape, 32), 1.0, 6.0, 3);
    CHECK(s.converged);
    CHECK(s.F_lambda > 0.0);
    CHECK(s.F_lambda < s.convergence.front().energy);
}

TEST_CASE("profile ordering of E", "[cell]")
{
    double v = solve_stokes_cell(make_riblet(RibletKind::VShape, 32), 1.0, 6.0, 1).E_lambda;
    double u = solve_stokes_cell(make_riblet(RibletKind::UShape, 32), 1.0, 6.0, 1).E_lambda;
    double b = solve_stokes_cell(make_riblet(RibletKind::Blade, 32), 1.0, 6.0, 1).E_lambda;
    CHECK(v < u);
    CHECK(u < b);
}

TEST_CASE("cell argument errors", "[cell]")
{
    auto p = make_riblet(RibletKind::VShape, 16);
    CHECK(code_of([&] { solve_stokes_cell(p, 1.0, 3.0, 1); }) == "bad_truncation");
    CHECK(code_of([&] { solve_laplace_cell(p, 1.0, 6.0, 0); }) == "bad_refine");
    auto one = solve_stokes_cell(p, 1.0, 6.0, 1);
    CHECK_FALSE(one.converged);
    CHECK(code_of([&] { require_converged(one); }) == "not_converged");
}
