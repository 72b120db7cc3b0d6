#pragma once

#include <cmath>

namespace microrib::kernels {

/// sinh(x)/x, exact at x = 0.
inline double sinhc(double x)
{
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 + x2 / 6.0 * (1.0 + x2 / 20.0);
    }
    return std::sinh(x) / x;
}

/// (cosh(x) - 1)/x^2, via the half-angle identity.
inline double coshm1c(double x)
{
    double s = sinhc(0.5 * x);
    return 0.5 * s * s;
}

/// (sinh(x) - x)/x^3, Taylor series below |x| = 1.
inline double sinhmxc(double x)
{
    if (std::abs(x) < 1.0) {
        double x2 = x * x;
        // 1/3! + x^2/5! + ... + x^14/17!
        double term = 1.0 / 6.0;
        double sum = term;
        for (int n = 5; n <= 17; n += 2) {
            term *= x2 / (double(n - 1) * double(n));
            sum += term;
        }
        return sum;
    }
    return (std::sinh(x) - x) / (x * x * x);
}

/// tanh(x)/x, exact at x = 0.
inline double tanhc(double x)
{
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 3.0 * (1.0 - 0.4 * x2);
    }
    return std::tanh(x) / x;
}

/// Hyperbolic quantities of the gap kh with every 1/k power absorbed.
struct GapKernels {
    double k = 0.0;
    double h = 0.0;
    double S = 0.0;      ///< sinh(kh)
    double C = 1.0;      ///< cosh(kh)
    double S_k = 0.0;    ///< sinh(kh)/k
    double Cm1_k2 = 0.0; ///< (cosh(kh) - 1)/k^2
    double Smx_k3 = 0.0; ///< (sinh(kh) - kh)/k^3
    double T2 = 0.0;     ///< tanh(kh/2)/k
    double kcoth = 1.0;  ///< kh/tanh(kh)

    GapKernels() = default;
    GapKernels(double k_, double h_) : k(k_), h(h_)
    {
        double x = k * h;
        S = std::sinh(x);
        C = std::cosh(x);
        S_k = h * sinhc(x);
        Cm1_k2 = h * h * coshm1c(x);
        Smx_k3 = h * h * h * sinhmxc(x);
        T2 = 0.5 * h * tanhc(0.5 * x);
        kcoth = 1.0 / tanhc(x);
    }

    /// (sinh(kh) - kh cosh(kh))/k^3
    double shmxch_k3() const { return Smx_k3 - h * Cm1_k2; }
};

/// Pointwise hyperbolic quantities at y with 1/k powers absorbed.
struct PointKernels {
    double sh = 0.0;     ///< sinh(ky)
    double ch = 1.0;     ///< cosh(ky)
    double sh_k = 0.0;   ///< sinh(ky)/k
    double chm1_k2 = 0.0; ///< (cosh(ky) - 1)/k^2

    PointKernels(double k, double y)
    {
        double x = k * y;
        sh = std::sinh(x);
        ch = std::cosh(x);
        sh_k = y * sinhc(x);
        chm1_k2 = y * y * coshm1c(x);
    }
};

} // namespace microrib::kernels
