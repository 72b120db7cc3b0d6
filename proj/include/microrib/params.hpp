#pragma once

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "kernels.hpp"

namespace microrib {

/// Inputs with |alpha - 1| at or below this are routed to the alpha = 1 formulas.
inline constexpr double alpha_branch_tol = 1e-8;

/// Which pair of wall parameters was supplied; the other pair is derived from it.
enum class WallInput { Absolute, Relative };

/// Physical and dimensionless inputs of the thin-film problem.
/// The wall is described by (alpha, beta) or equivalently by (nu_b_bar, delta_slip);
/// both pairs are kept so that N = 0 stays representable in relative form.
struct FluidWallParams {
    double N = 0.0;          ///< coupling number
    double Rc = 1.0;         ///< microrotation viscosity scale
    double alpha = 1.0;      ///< boundary viscosity ratio
    double beta = 1.0;       ///< wall friction coefficient
    double nu_b_bar = 1.0;   ///< relative boundary viscosity (1 - alpha N^2)/(1 - N^2)
    double delta_slip = 1.0; ///< slip parameter Rc/(2 N^2 beta)
    double h = 1.0;          ///< gap height
    WallInput input = WallInput::Absolute;

    static FluidWallParams absolute(double N, double Rc, double alpha, double beta, double h)
    {
        FluidWallParams p;
        p.N = N;
        p.Rc = Rc;
        p.h = h;
        p.alpha = alpha;
        p.beta = beta;
        p.input = WallInput::Absolute;
        long double n2 = (long double)N * N;
        p.nu_b_bar = double((1.0L - alpha * n2) / (1.0L - n2));
        p.delta_slip = double(Rc / (2.0L * n2 * beta));
        return p;
    }

    static FluidWallParams relative(double N, double Rc, double nu_b_bar, double delta_slip, double h)
    {
        FluidWallParams p;
        p.N = N;
        p.Rc = Rc;
        p.h = h;
        p.nu_b_bar = nu_b_bar;
        p.delta_slip = delta_slip;
        p.input = WallInput::Relative;
        long double n2 = (long double)N * N;
        p.alpha = double((1.0L - nu_b_bar * (1.0L - n2)) / n2);
        p.beta = double(Rc / (2.0L * n2 * delta_slip));
        return p;
    }
};

/// One violated constraint; `code` is stable, `message` is for humans.
struct Violation {
    std::string code;
    std::string message;
};

/// Constraint check outcome: hard violations plus advisory flags.
struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<Violation> flags;

    bool ok() const { return violations.empty(); }
    bool has(const std::string& code) const
    {
        for (const auto& v : violations)
            if (v.code == code)
                return true;
        for (const auto& v : flags)
            if (v.code == code)
                return true;
        return false;
    }
};

/// gamma = 1/alpha - N^2 - N^2 beta, evaluated in the supplied representation.
inline double wall_gamma(const FluidWallParams& p)
{
    double n2 = p.N * p.N;
    if (p.input == WallInput::Relative)
        return n2 / (1.0 - p.nu_b_bar * (1.0 - n2)) - n2 - p.Rc / (2.0 * p.delta_slip);
    return 1.0 / p.alpha - n2 - n2 * p.beta;
}

inline ValidationReport validate(const FluidWallParams& p)
{
    ValidationReport r;
    auto bad = [&](const char* code, const std::string& msg) { r.violations.push_back({code, msg}); };
    auto flag = [&](const char* code, const std::string& msg) { r.flags.push_back({code, msg}); };

    double vals[] = {p.N, p.Rc, p.h, p.input == WallInput::Absolute ? p.alpha : p.nu_b_bar,
                     p.input == WallInput::Absolute ? p.beta : p.delta_slip};
    for (double v : vals) {
        if (!std::isfinite(v)) {
            bad("non_finite", "all parameters must be finite");
            return r;
        }
    }
    double n2 = p.N * p.N;
    if (p.N < 0.0)
        bad("N_nonnegative", "N >= 0");
    if (p.Rc <= 0.0)
        bad("Rc_positive", "R_c > 0");
    if (p.h <= 0.0)
        bad("h_positive", "h > 0");
    if (n2 > 0.5)
        bad("N2_le_half", "N^2 <= 1/2");

    bool alpha_pos = p.input == WallInput::Absolute ? p.alpha > 0.0
                                                    : (p.N == 0.0 || 1.0 - p.nu_b_bar * (1.0 - n2) > 0.0);
    if (!alpha_pos)
        bad("alpha_positive", "alpha > 0");

    // 1/alpha >= N^2 is equivalent to nu_b_bar >= 0 for N^2 < 1.
    bool n_alpha = p.input == WallInput::Absolute ? (alpha_pos && 1.0 / p.alpha >= n2) : p.nu_b_bar >= 0.0;
    if (!n_alpha)
        bad("N2_le_inv_alpha", "1/alpha >= N^2");

    if (p.input == WallInput::Absolute ? p.beta <= 0.0 : p.delta_slip <= 0.0)
        bad("beta_positive", "beta > 0");

    if (p.N == 0.0)
        flag("newtonian_wall_conversion", "alpha/beta <-> nu_b_bar/delta_slip conversion undefined at N = 0");

    if (alpha_pos && p.Rc > 0.0 && p.h > 0.0) {
        double g = wall_gamma(p);
        if (!(g * g < p.Rc * (1.0 - 2.0 * n2) / (p.h * p.h)))
            bad("gamma_bound", "gamma^2 < R_c (1 - 2N^2)/h^2");
        if (g < 0.0)
            flag("gamma_negative", "gamma = 1/alpha - N^2 - N^2 beta is negative");
    }
    return r;
}

/// Scalars shared by every closed form.
struct DerivedParams {
    FluidWallParams p;
    double k = 0.0;            ///< 2N sqrt((1 - N^2)/Rc)
    double gamma_alpha = 0.0;  ///< 2(1 - alpha N^2)/(alpha - 1), NaN when alpha_one
    double C_alpha = 0.0;      ///< alpha h/(alpha - 1), NaN when alpha_one
    double C_N = 0.0;          ///< N^2/(1 - N^2) sinh(kh)/k
    double nu_b_bar = 1.0;
    double delta_slip = 1.0;
    double r = 0.0;            ///< Rc/beta = 2 N^2 delta_slip
    double two_over_alpha = 0.0;
    double two_n2_beta = 0.0;  ///< 2 N^2 beta = Rc/delta_slip
    bool alpha_one = false;    ///< gamma_alpha undefined; alpha = 1 branch
    bool newtonian = false;    ///< N = 0
    kernels::GapKernels K;
};

inline DerivedParams derive(const FluidWallParams& p)
{
    DerivedParams d;
    d.p = p;
    double n2 = p.N * p.N;
    double c = 1.0 - n2;
    d.newtonian = p.N == 0.0;
    d.k = 2.0 * p.N * std::sqrt(c / p.Rc);
    d.K = kernels::GapKernels(d.k, p.h);
    d.C_N = n2 / c * d.K.S_k;
    d.nu_b_bar = p.nu_b_bar;
    d.delta_slip = p.delta_slip;

    double alpha_m1 = 0.0;
    if (p.input == WallInput::Relative) {
        alpha_m1 = d.newtonian ? std::numeric_limits<double>::infinity() : c * (1.0 - p.nu_b_bar) / n2;
        d.two_over_alpha = d.newtonian ? 0.0 : 2.0 * n2 / (1.0 - p.nu_b_bar * c);
        d.two_n2_beta = p.Rc / p.delta_slip;
        d.r = 2.0 * n2 * p.delta_slip;
        d.alpha_one = std::abs(alpha_m1) <= alpha_branch_tol;
        if (!d.alpha_one) {
            d.gamma_alpha = 2.0 * p.nu_b_bar * n2 / (1.0 - p.nu_b_bar);
            d.C_alpha = d.newtonian ? p.h : p.h * (1.0 - p.nu_b_bar * c) / (c * (1.0 - p.nu_b_bar));
        }
    } else {
        alpha_m1 = p.alpha - 1.0;
        d.two_over_alpha = 2.0 / p.alpha;
        d.two_n2_beta = 2.0 * n2 * p.beta;
        d.r = p.Rc / p.beta;
        d.alpha_one = std::abs(alpha_m1) <= alpha_branch_tol;
        if (!d.alpha_one) {
            d.gamma_alpha = 2.0 * (1.0 - p.alpha * n2) / alpha_m1;
            d.C_alpha = p.alpha * p.h / alpha_m1;
        }
    }
    if (d.alpha_one) {
        d.gamma_alpha = std::numeric_limits<double>::quiet_NaN();
        d.C_alpha = std::numeric_limits<double>::quiet_NaN();
    }
    if (d.newtonian) {
        d.alpha_one = false;
        d.gamma_alpha = 0.0;
        d.C_alpha = p.h;
    }
    return d;
}

/// Builds parameters from `key = value` pairs; accepted keys: N, Rc, alpha|nu_b_bar, beta|delta_slip, h.
inline FluidWallParams params_from_map(const std::map<std::string, double>& kv)
{
    for (const auto& [key, v] : kv) {
        if (key != "N" && key != "Rc" && key != "alpha" && key != "nu_b_bar" && key != "beta" &&
            key != "delta_slip" && key != "h")
            throw input_error("unknown_key", key);
    }
    auto get = [&](const char* key) -> double {
        auto it = kv.find(key);
        if (it == kv.end())
            throw input_error("missing_key", key);
        return it->second;
    };
    bool has_alpha = kv.count("alpha"), has_nu = kv.count("nu_b_bar");
    bool has_beta = kv.count("beta"), has_ds = kv.count("delta_slip");
    if (has_alpha == has_nu)
        throw input_error("wall_key", "exactly one of alpha, nu_b_bar is required");
    if (has_beta == has_ds)
        throw input_error("wall_key", "exactly one of beta, delta_slip is required");
    if (has_alpha != has_beta)
        throw input_error("wall_key", "use either alpha/beta or nu_b_bar/delta_slip");
    double h = kv.count("h") ? kv.at("h") : 1.0;
    if (has_alpha)
        return FluidWallParams::absolute(get("N"), get("Rc"), get("alpha"), get("beta"), h);
    return FluidWallParams::relative(get("N"), get("Rc"), get("nu_b_bar"), get("delta_slip"), h);
}

inline double parse_number(const std::string& text, const std::string& key)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw input_error("bad_value", key + " = " + text);
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
        ++pos;
    if (pos != text.size())
        throw input_error("bad_value", key + " = " + text);
    return v;
}

inline std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

/// Reads `key = value` lines; `#` starts a comment.
inline std::map<std::string, double> read_config(std::istream& in)
{
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw input_error("config_syntax", "line " + std::to_string(lineno));
        std::string key = trim(line.substr(0, eq));
        kv[key] = parse_number(trim(line.substr(eq + 1)), key);
    }
    return kv;
}

inline std::map<std::string, double> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("config_open", path);
    return read_config(in);
}

} // namespace microrib
