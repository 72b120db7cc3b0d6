#include <catch_amalgamated.hpp>

#include <microrib/kernels.hpp>

#include <cmath>

using namespace microrib;

namespace {

struct KernelRef {
    double h, kh;
    double cm1_k2, s_k, smx_k3; ///< 50-digit values
};

constexpr KernelRef refs[] = {
    {1, 1e-8, 0.50000000000000000417, 1.0000000000000000167, 0.1666666666666666675},
    {1, 1e-6, 0.50000000000004166667, 1.0000000000001666667, 0.166666666666675},
    {1, 1e-4, 0.50000000041666666681, 1.0000000016666666675, 0.16666666675000000002},
    {1, 1e-2, 0.50000416668055558036, 1.0000166667500001984, 0.16666750000198412974},
    {1, 1, 0.54308063481524377848, 1.1752011936438014569, 0.17520119364380145688},
    {2, 1e-8, 2.0000000000000000167, 2.0000000000000000333, 1.33333333333333334},
    {2, 1e-6, 2.0000000000001666667, 2.0000000000003333333, 1.3333333333334},
    {2, 1e-4, 2.0000000016666666672, 2.000000003333333335, 1.3333333340000000002},
    {2, 1e-2, 2.0000166667222223214, 2.0000333335000003968, 1.3333400000158730379},
    {2, 1, 2.1723225392609751139, 2.3504023872876029138, 1.4016095491504116551},
};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST_CASE("gap kernels match extended-precision references", "[kernels]")
{
    for (const auto& r : refs) {
        CAPTURE(r.h, r.kh);
        kernels::GapKernels K(r.kh / r.h, r.h);
        CHECK(rel(K.Cm1_k2, r.cm1_k2) <= 1e-12);
        CHECK(rel(K.S_k, r.s_k) <= 1e-12);
        CHECK(rel(K.Smx_k3, r.smx_k3) <= 1e-12);
    }
}

TEST_CASE("scalar kernels have exact limits at zero", "[kernels]")
{
    CHECK(kernels::sinhc(0.0) == 1.0);
    CHECK(kernels::coshm1c(0.0) == 0.5);
    CHECK(kernels::sinhmxc(0.0) == Catch::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(kernels::tanhc(0.0) == 1.0);
    kernels::GapKernels K(0.0, 1.5);
    CHECK(K.S_k == 1.5);
    CHECK(K.Cm1_k2 == Catch::Approx(1.125).epsilon(1e-15));
}

TEST_CASE("point kernels agree with direct evaluation away from zero", "[kernels]")
{
    double k = 3.0, y = 0.7, x = k * y;
    kernels::PointKernels P(k, y);
    CHECK(P.sh == Catch::Approx(std::sinh(x)).epsilon(1e-14));
    CHECK(P.ch == Catch::Approx(std::cosh(x)).epsilon(1e-14));
    CHECK(P.sh_k == Catch::Approx(std::sinh(x) / k).epsilon(1e-14));
    CHECK(P.chm1_k2 == Catch::Approx((std::cosh(x) - 1.0) / (k * k)).epsilon(1e-13));
}
