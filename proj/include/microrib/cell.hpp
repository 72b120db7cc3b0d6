#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "error.hpp"

namespace microrib {

enum class RibletKind { VShape, UShape, Blade, Custom };

inline const char* to_string(RibletKind k)
{
    switch (k) {
    case RibletKind::VShape: return "vshape";
    case RibletKind::UShape: return "ushape";
    case RibletKind::Blade: return "blade";
    case RibletKind::Custom: return "custom";
    }
    return "?";
}

/// One period of a riblet on a uniform grid of n intervals over [0, 1].
struct RibletProfile {
    RibletKind kind = RibletKind::Custom;
    int n = 0;
    std::vector<double> samples;  ///< Psi, n + 1 values
    std::vector<double> dsamples; ///< Psi', n + 1 values
    double norm = 0.0;            ///< int_0^1 |Psi'|^2

    double peak() const { return *std::max_element(samples.begin(), samples.end()); }
};

/// Geometry of the built-in shapes before normalization.
namespace riblet_shape {
inline constexpr double u_radius = 0.508;   ///< arc radius of the scallop, period 1
inline constexpr double blade_width = 0.06; ///< fin width at half height
inline constexpr double blade_flank = 0.03; ///< half-width of the cosine flank
} // namespace riblet_shape

namespace detail {

inline void normalize(RibletProfile& p, double norm)
{
    if (!(norm > 1e-300) || !std::isfinite(norm))
        throw input_error("not_normalizable", "Psi' vanishes identically");
    double s = 1.0 / std::sqrt(norm);
    double lo = *std::min_element(p.samples.begin(), p.samples.end());
    for (auto& v : p.samples)
        v = (v - lo) * s;
    for (auto& v : p.dsamples)
        v *= s;
    p.norm = norm * s * s;
}

} // namespace detail

/// Built-in profile; Psi' is analytic, with the mean of the one-sided values at kinks.
inline RibletProfile make_riblet(RibletKind kind, int n)
{
    if (n < 16)
        throw input_error("bad_samples", "n >= 16");
    if (kind == RibletKind::Custom)
        throw input_error("bad_kind", "custom profiles are read from data");
    RibletProfile p;
    p.kind = kind;
    p.n = n;
    p.samples.resize(n + 1);
    p.dsamples.resize(n + 1);
    const double pi = std::numbers::pi;
    double norm = 0.0;
    for (int i = 0; i <= n; ++i) {
        double z = double(i) / n, x = z - 0.5;
        double psi = 0.0, dpsi = 0.0;
        if (kind == RibletKind::VShape) {
            psi = 0.5 - std::abs(x);
            dpsi = x < 0.0 ? 1.0 : (x > 0.0 ? -1.0 : 0.0);
            if (i == 0 || i == n)
                dpsi = 0.0;
        } else if (kind == RibletKind::UShape) {
            double R = riblet_shape::u_radius;
            psi = R - std::sqrt(R * R - x * x);
            dpsi = (i == 0 || i == n) ? 0.0 : x / std::sqrt(R * R - x * x);
        } else {
            double t = std::min(z, 1.0 - z), sgn = z < 0.5 ? 1.0 : -1.0;
            double a = riblet_shape::blade_width / 2 - riblet_shape::blade_flank;
            double b = riblet_shape::blade_width / 2 + riblet_shape::blade_flank;
            if (t <= a) {
                psi = 1.0;
            } else if (t < b) {
                double th = pi * (t - a) / (b - a);
                psi = 0.5 * (1.0 + std::cos(th));
                dpsi = -sgn * 0.5 * std::sin(th) * pi / (b - a);
            }
        }
        p.samples[i] = psi;
        p.dsamples[i] = dpsi;
    }
    if (kind == RibletKind::VShape) {
        norm = 1.0;
    } else if (kind == RibletKind::UShape) {
        double R = riblet_shape::u_radius;
        norm = -1.0 + 2.0 * R * std::atanh(0.5 / R);
    } else {
        norm = pi * pi / (4.0 * 2.0 * riblet_shape::blade_flank);
    }
    detail::normalize(p, norm);
    return p;
}

/// Profile from n + 1 samples of Psi on a uniform grid over [0, 1]; Psi' by periodic central differences.
inline RibletProfile custom_riblet(const std::vector<double>& psi)
{
    int n = int(psi.size()) - 1;
    if (n < 16)
        throw input_error("bad_samples", "at least 17 samples");
    double scale = 0.0;
    for (double v : psi)
        scale = std::max(scale, std::abs(v));
    if (std::abs(psi.front() - psi.back()) > 1e-8 * std::max(scale, 1.0))
        throw input_error("not_periodic", "Psi(0) != Psi(1)");
    RibletProfile p;
    p.kind = RibletKind::Custom;
    p.n = n;
    p.samples = psi;
    p.dsamples.resize(n + 1);
    double dz = 1.0 / n, norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double d = (psi[(i + 1) % n] - psi[(i + n - 1) % n]) / (2.0 * dz);
        p.dsamples[i] = d;
        norm += d * d * dz;
    }
    p.dsamples[n] = p.dsamples[0];
    detail::normalize(p, norm);
    return p;
}

/// Reads two whitespace-separated columns (z1, Psi) on a uniform grid from 0 to 1; `#` starts a comment.
inline RibletProfile load_riblet(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("profile_open", path);
    std::vector<double> z, psi;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a))
            continue;
        if (!(ls >> b))
            throw input_error("profile_syntax", line);
        z.push_back(a);
        psi.push_back(b);
    }
    if (z.size() < 17)
        throw input_error("bad_samples", "at least 17 samples");
    double dz = 1.0 / double(z.size() - 1);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (std::abs(z[i] - double(i) * dz) > 1e-9)
            throw input_error("profile_grid", "z1 must be uniform on [0, 1]");
    return custom_riblet(psi);
}

/// One mesh level of a cell solve.
struct CellLevel {
    int level = 0;
    int nx = 0, nz = 0;
    int elements = 0;
    double max_diameter = 0.0;
    double energy = 0.0;          ///< gradient quadrature
    double energy_quadform = 0.0; ///< assembled stiffness quadratic form
    double div_residual = 0.0;    ///< max |B phi| (Stokes only)
};

struct MeshStats {
    double M_trunc = 0.0;
    int elements = 0;
    double max_diameter = 0.0;
};

/// Vertex values of the finest level.
struct CellField {
    int nx = 0, nz = 0;
    std::vector<double> z1, z3, phi1, phi3, q;
};

struct CellSolution {
    double E_lambda = std::numeric_limits<double>::quiet_NaN();
    double F_lambda = std::numeric_limits<double>::quiet_NaN();
    double lambda = 1.0;
    MeshStats mesh_stats;
    std::vector<CellLevel> convergence;
    bool converged = false; ///< two finest levels within 1%; false with one level
    CellField field;
};

namespace detail {

/// Structured triangulation of (0,1) x (0,M), periodic in z1, exponentially graded toward z3 = 0.
/// P2 nodes form a (2 nx) x (2 nz + 1) tensor grid; P1 nodes are the vertices.
struct StripMesh {
    int nx = 0, nz = 0;
    double M = 0.0;
    std::vector<double> zv; ///< vertex heights

    int nodes2() const { return 2 * nx * (2 * nz + 1); }
    int nodes1() const { return nx * (nz + 1); }
    int node2(int I, int J) const { return J * 2 * nx + ((I % (2 * nx)) + 2 * nx) % (2 * nx); }
    int node1(int i, int j) const { return j * nx + ((i % nx) + nx) % nx; }
    double x2(int I) const { return double(I) / (2 * nx); }
    double z2(int J) const { return J % 2 == 0 ? zv[J / 2] : 0.5 * (zv[J / 2] + zv[J / 2 + 1]); }
    int elements() const { return 2 * nx * nz; }
};

inline StripMesh strip_mesh(int nx, double M)
{
    StripMesh m;
    m.nx = nx;
    m.nz = std::max(8, nx / 2);
    m.M = M;
    // first layer as thin as the z1 spacing: M beta/(e^beta - 1) = nz/nx
    double target = double(m.nz) / nx, lo = 1e-12, hi = 60.0;
    auto first = [&](double b) { return M * b / std::expm1(b); };
    double beta = 0.0;
    if (first(lo) > target) {
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            (first(mid) > target ? lo : hi) = mid;
        }
        beta = 0.5 * (lo + hi);
    }
    m.zv.resize(m.nz + 1);
    for (int j = 0; j <= m.nz; ++j) {
        double s = double(j) / m.nz;
        m.zv[j] = beta > 0.0 ? M * std::expm1(beta * s) / std::expm1(beta) : M * s;
    }
    m.zv[m.nz] = M;
    return m;
}

/// Triangle with P2 node grid coordinates (unwrapped in I) and vertex grid coordinates.
struct Tri {
    std::array<int, 3> vi, vj; ///< vertex (i, j)
    std::array<int, 6> I, J; ///< P2 node (I, J): vertices then midpoints of 01, 12, 20
};

template <class F>
void for_each_triangle(const StripMesh& m, F&& f)
{
    for (int j = 0; j < m.nz; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            int v[2][3][2] = {{{i, j}, {i + 1, j}, {i + 1, j + 1}}, {{i, j}, {i + 1, j + 1}, {i, j + 1}}};
            for (auto& tv : v) {
                Tri t;
                for (int a = 0; a < 3; ++a) {
                    t.vi[a] = tv[a][0];
                    t.vj[a] = tv[a][1];
                    t.I[a] = 2 * tv[a][0];
                    t.J[a] = 2 * tv[a][1];
                }
                const int e[3][2] = {{0, 1}, {1, 2}, {2, 0}};
                for (int k = 0; k < 3; ++k) {
                    t.I[3 + k] = (t.I[e[k][0]] + t.I[e[k][1]]) / 2;
                    t.J[3 + k] = (t.J[e[k][0]] + t.J[e[k][1]]) / 2;
                }
                f(t);
            }
        }
    }
}

/// Affine geometry of a triangle: area, barycentric gradients, diameter.
struct TriGeom {
    double area;
    double gx[3], gz[3];
    double diam;
};

inline TriGeom tri_geom(const StripMesh& m, const Tri& t)
{
    double x[3], z[3];
    for (int a = 0; a < 3; ++a) {
        x[a] = double(t.vi[a]) / m.nx;
        z[a] = m.zv[t.vj[a]];
    }
    double det = (x[1] - x[0]) * (z[2] - z[0]) - (x[2] - x[0]) * (z[1] - z[0]);
    TriGeom g;
    g.area = 0.5 * std::abs(det);
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3, c = (a + 2) % 3;
        g.gx[a] = (z[b] - z[c]) / det;
        g.gz[a] = (x[c] - x[b]) / det;
    }
    g.diam = 0.0;
    for (int a = 0; a < 3; ++a) {
        int b = (a + 1) % 3;
        g.diam = std::max(g.diam, std::hypot(x[b] - x[a], z[b] - z[a]));
    }
    return g;
}

/// Edge-midpoint quadrature, exact for quadratics.
inline constexpr double quad_bary[3][3] = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};

/// P2 basis gradients at barycentric point `l`.
inline void p2_grad(const TriGeom& g, const double* l, double dx[6], double dz[6])
{
    for (int a = 0; a < 3; ++a) {
        dx[a] = (4.0 * l[a] - 1.0) * g.gx[a];
        dz[a] = (4.0 * l[a] - 1.0) * g.gz[a];
    }
    const int e[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (int k = 0; k < 3; ++k) {
        int a = e[k][0], b = e[k][1];
        dx[3 + k] = 4.0 * (l[a] * g.gx[b] + l[b] * g.gx[a]);
        dz[3 + k] = 4.0 * (l[a] * g.gz[b] + l[b] * g.gz[a]);
    }
}

/// Local P2 stiffness.
inline void p2_stiffness(const TriGeom& g, double K[6][6])
{
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            K[r][c] = 0.0;
    for (const auto& l : quad_bary) {
        double dx[6], dz[6];
        p2_grad(g, l, dx, dz);
        double w = g.area / 3.0;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                K[r][c] += w * (dx[r] * dx[c] + dz[r] * dz[c]);
    }
}

/// Continuous piecewise-linear interpolant of the periodic samples of Psi'.
inline double datum(const RibletProfile& p, double z1)
{
    double s = z1 * p.n;
    s -= std::floor(s / p.n) * p.n;
    int i = std::min(int(std::floor(s)), p.n - 1);
    double t = s - i;
    return (1.0 - t) * p.dsamples[i] + t * p.dsamples[i + 1];
}

/// Gradient-quadrature energy of the P2 field `u` with `ncomp` interleaved components.
inline double p2_energy(const StripMesh& m, const std::vector<double>& u, int ncomp)
{
    double e = 0.0;
    for_each_triangle(m, [&](const Tri& t) {
        auto g = tri_geom(m, t);
        for (const auto& l : quad_bary) {
            double dx[6], dz[6];
            p2_grad(g, l, dx, dz);
            for (int c = 0; c < ncomp; ++c) {
                double ux = 0.0, uz = 0.0;
                for (int a = 0; a < 6; ++a) {
                    double v = u[std::size_t(ncomp) * m.node2(t.I[a], t.J[a]) + c];
                    ux += v * dx[a];
                    uz += v * dz[a];
                }
                e += g.area / 3.0 * (ux * ux + uz * uz);
            }
        }
    });
    return e;
}

inline double max_diameter(const StripMesh& m)
{
    double d = 0.0;
    for_each_triangle(m, [&](const Tri& t) { d = std::max(d, tri_geom(m, t).diam); });
    return d;
}

using Triplets = std::vector<Eigen::Triplet<double>>;

/// Relative size of the pressure regularization removed by refinement.
inline constexpr double saddle_regularization = 1e-8;

/// Solves the symmetric saddle system A x = b.
/// The factorized matrix is A - diag(reg), which is quasi-definite for reg > 0 on the constraint rows,
/// so LDL^T exists under any symmetric ordering; iterative refinement then removes the regularization.
inline Eigen::VectorXd saddle_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                                    const Eigen::VectorXd& reg, double* residual = nullptr)
{
    Triplets diag;
    for (int i = 0; i < reg.size(); ++i)
        diag.emplace_back(i, i, -reg[i]);
    Eigen::SparseMatrix<double> D(A.rows(), A.cols());
    D.setFromTriplets(diag.begin(), diag.end());
    Eigen::SparseMatrix<double> R = A + D;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(R);
    if (ldlt.info() != Eigen::Success)
        throw solver_error("solver_failure", "saddle-point factorization");
    Eigen::VectorXd x = ldlt.solve(b);
    double bn = std::max(b.lpNorm<Eigen::Infinity>(), 1e-300), rn = 0.0;
    for (int it = 0; it < 50; ++it) {
        Eigen::VectorXd r = b - A * x;
        rn = r.lpNorm<Eigen::Infinity>() / bn;
        if (!std::isfinite(rn))
            break;
        if (rn < 1e-14)
            break;
        x += ldlt.solve(r);
    }
    if (!x.allFinite() || !(rn < 1e-10))
        throw solver_error("solver_failure", "saddle-point refinement stalled");
    if (residual)
        *residual = rn;
    return x;
}

/// Splits assembled entries into the free block and a Dirichlet lift on the right-hand side.
struct Reduced {
    Triplets A;
    Eigen::VectorXd b;
};

inline Reduced reduce(const Triplets& full, const std::vector<int>& map, const std::vector<double>& fixed, int nfree)
{
    Reduced r;
    r.b = Eigen::VectorXd::Zero(nfree);
    r.A.reserve(full.size());
    for (const auto& t : full) {
        int fr = map[t.row()], fc = map[t.col()];
        if (fr < 0)
            continue;
        if (fc >= 0)
            r.A.emplace_back(fr, fc, t.value());
        else
            r.b[fr] -= t.value() * fixed[t.col()];
    }
    return r;
}

inline void check_cell_args(double M, int refine)
{
    if (!(M >= 4.0) || !std::isfinite(M))
        throw input_error("bad_truncation", "M_trunc >= 4");
    if (refine < 1)
        throw input_error("bad_refine", "refine >= 1");
}

inline int level_nx(const RibletProfile& p, int level) { return p.n << (level - 1); }

struct StokesLevel {
    CellLevel info;
    StripMesh mesh;
    std::vector<double> vel, q;
};

inline StokesLevel stokes_level(const RibletProfile& p, double lambda, double M, int level)
{
    StokesLevel out;
    auto m = strip_mesh(level_nx(p, level), M);
    int n2 = m.nodes2(), n1 = m.nodes1();
    int nv = 2 * n2, ntot = nv + n1 + 1;

    // velocity, then pressure, then the mean-pressure multiplier
    Triplets full, stiff;
    for_each_triangle(m, [&](const Tri& t) {
        auto g = tri_geom(m, t);
        double K[6][6];
        p2_stiffness(g, K);
        int gn[6], gp[3];
        for (int a = 0; a < 6; ++a)
            gn[a] = m.node2(t.I[a], t.J[a]);
        for (int a = 0; a < 3; ++a)
            gp[a] = nv + m.node1(t.vi[a], t.vj[a]);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                for (int d = 0; d < 2; ++d) {
                    full.emplace_back(2 * gn[r] + d, 2 * gn[c] + d, K[r][c]);
                    stiff.emplace_back(2 * gn[r] + d, 2 * gn[c] + d, K[r][c]);
                }
        // B(q, v) = int q div v, symmetric saddle with -B
        for (const auto& l : quad_bary) {
            double dx[6], dz[6];
            p2_grad(g, l, dx, dz);
            double w = g.area / 3.0;
            for (int a = 0; a < 3; ++a) {
                for (int c = 0; c < 6; ++c) {
                    double bx = -w * l[a] * dx[c], bz = -w * l[a] * dz[c];
                    full.emplace_back(gp[a], 2 * gn[c], bx);
                    full.emplace_back(2 * gn[c], gp[a], bx);
                    full.emplace_back(gp[a], 2 * gn[c] + 1, bz);
                    full.emplace_back(2 * gn[c] + 1, gp[a], bz);
                }
            }
        }
        for (int a = 0; a < 3; ++a) {
            full.emplace_back(gp[a], ntot - 1, g.area / 3.0);
            full.emplace_back(ntot - 1, gp[a], g.area / 3.0);
        }
    });

    std::vector<double> fixed(ntot, 0.0);
    std::vector<int> map(ntot, 0);
    for (int I = 0; I < 2 * m.nx; ++I) {
        int b = m.node2(I, 0), top = m.node2(I, 2 * m.nz);
        map[2 * b + 1] = -1;
        fixed[2 * b + 1] = lambda * datum(p, m.x2(I));
        map[2 * top] = map[2 * top + 1] = -1;
    }
    int nfree = 0;
    for (auto& v : map)
        if (v == 0)
            v = nfree++;

    auto red = reduce(full, map, fixed, nfree);
    Eigen::SparseMatrix<double> A(nfree, nfree);
    A.setFromTriplets(red.A.begin(), red.A.end());
    // regularize with a small multiple of the lumped pressure mass
    Eigen::VectorXd reg = Eigen::VectorXd::Zero(nfree);
    for (const auto& t : full)
        if (t.col() == ntot - 1 && t.row() < ntot - 1)
            reg[map[t.row()]] += saddle_regularization * t.value();
    reg[map[ntot - 1]] = saddle_regularization;
    Eigen::VectorXd x = saddle_solve(A, red.b, reg);

    std::vector<double> sol = fixed;
    for (int i = 0; i < ntot; ++i)
        if (map[i] >= 0)
            sol[i] = x[map[i]];
    out.vel.assign(sol.begin(), sol.begin() + nv);
    out.q.assign(sol.begin() + nv, sol.begin() + nv + n1);

    // divergence rows: B phi over all pressure dofs
    Eigen::VectorXd div = Eigen::VectorXd::Zero(n1);
    Eigen::VectorXd k_phi = Eigen::VectorXd::Zero(nv);
    for (const auto& t : full)
        if (t.row() >= nv && t.row() < nv + n1 && t.col() < nv)
            div[t.row() - nv] += t.value() * sol[t.col()];
    for (const auto& t : stiff)
        k_phi[t.row()] += t.value() * sol[t.col()];
    double quad = 0.0;
    for (int i = 0; i < nv; ++i)
        quad += sol[i] * k_phi[i];

    out.info.level = level;
    out.info.nx = m.nx;
    out.info.nz = m.nz;
    out.info.elements = m.elements();
    out.info.max_diameter = max_diameter(m);
    out.info.energy = p2_energy(m, out.vel, 2);
    out.info.energy_quadform = quad;
    out.info.div_residual = div.cwiseAbs().maxCoeff();
    out.mesh = std::move(m);
    return out;
}

struct LaplaceLevel {
    CellLevel info;
    StripMesh mesh;
    std::vector<double> u;
};

inline LaplaceLevel laplace_level(const RibletProfile& p, double lambda, double M, int level)
{
    LaplaceLevel out;
    auto m = strip_mesh(level_nx(p, level), M);
    int n2 = m.nodes2();
    Triplets full;
    for_each_triangle(m, [&](const Tri& t) {
        auto g = tri_geom(m, t);
        double K[6][6];
        p2_stiffness(g, K);
        int gn[6];
        for (int a = 0; a < 6; ++a)
            gn[a] = m.node2(t.I[a], t.J[a]);
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c)
                full.emplace_back(gn[r], gn[c], K[r][c]);
    });
    std::vector<double> fixed(n2, 0.0);
    std::vector<int> map(n2, 0);
    for (int I = 0; I < 2 * m.nx; ++I) {
        int b = m.node2(I, 0), top = m.node2(I, 2 * m.nz);
        map[b] = map[top] = -1;
        fixed[b] = lambda * datum(p, m.x2(I));
    }
    int nfree = 0;
    for (auto& v : map)
        if (v == 0)
            v = nfree++;
    auto red = reduce(full, map, fixed, nfree);
    Eigen::SparseMatrix<double> A(nfree, nfree);
    A.setFromTriplets(red.A.begin(), red.A.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        throw solver_error("solver_failure", "Laplace factorization");
    Eigen::VectorXd x = ldlt.solve(red.b);
    if (!x.allFinite())
        throw solver_error("solver_failure", "Laplace solve");
    out.u = fixed;
    for (int i = 0; i < n2; ++i)
        if (map[i] >= 0)
            out.u[i] = x[map[i]];

    Eigen::VectorXd ku = Eigen::VectorXd::Zero(n2);
    for (const auto& t : full)
        ku[t.row()] += t.value() * out.u[t.col()];
    double quad = 0.0;
    for (int i = 0; i < n2; ++i)
        quad += out.u[i] * ku[i];

    out.info.level = level;
    out.info.nx = m.nx;
    out.info.nz = m.nz;
    out.info.elements = m.elements();
    out.info.max_diameter = max_diameter(m);
    out.info.energy = p2_energy(m, out.u, 1);
    out.info.energy_quadform = quad;
    out.mesh = std::move(m);
    return out;
}

inline bool within_one_percent(const std::vector<CellLevel>& c)
{
    if (c.size() < 2)
        return false;
    double a = c[c.size() - 1].energy, b = c[c.size() - 2].energy;
    return std::abs(a - b) <= 0.01 * std::max(std::abs(a), std::abs(b)) || (a == 0.0 && b == 0.0);
}

inline void fill_field(CellField& f, const StripMesh& m, const std::vector<double>& u, int ncomp,
                       const std::vector<double>* q)
{
    f.nx = m.nx;
    f.nz = m.nz;
    int n1 = m.nodes1();
    f.z1.resize(n1);
    f.z3.resize(n1);
    f.phi1.assign(n1, 0.0);
    f.phi3.resize(n1);
    f.q.assign(n1, 0.0);
    for (int j = 0; j <= m.nz; ++j)
        for (int i = 0; i < m.nx; ++i) {
            int k = m.node1(i, j), node = m.node2(2 * i, 2 * j);
            f.z1[k] = double(i) / m.nx;
            f.z3[k] = m.zv[j];
            if (ncomp == 2) {
                f.phi1[k] = u[2 * node];
                f.phi3[k] = u[2 * node + 1];
            } else {
                f.phi3[k] = u[node];
            }
            if (q)
                f.q[k] = (*q)[k];
        }
}

} // namespace detail

/// Stokes cell problem on levels 1..refine; level l uses n 2^(l-1) cells across the period.
inline CellSolution solve_stokes_cell(const RibletProfile& p, double lambda, double M_trunc = 6.0, int refine = 3)
{
    detail::check_cell_args(M_trunc, refine);
    CellSolution s;
    s.lambda = lambda;
    for (int l = 1; l <= refine; ++l) {
        auto lev = detail::stokes_level(p, lambda, M_trunc, l);
        s.convergence.push_back(lev.info);
        if (l == refine)
            detail::fill_field(s.field, lev.mesh, lev.vel, 2, &lev.q);
    }
    const auto& last = s.convergence.back();
    s.E_lambda = last.energy;
    s.mesh_stats = {M_trunc, last.elements, last.max_diameter};
    s.converged = detail::within_one_percent(s.convergence);
    return s;
}

/// Laplace cell problem on levels 1..refine.
inline CellSolution solve_laplace_cell(const RibletProfile& p, double lambda, double M_trunc = 6.0, int refine = 3)
{
    detail::check_cell_args(M_trunc, refine);
    CellSolution s;
    s.lambda = lambda;
    for (int l = 1; l <= refine; ++l) {
        auto lev = detail::laplace_level(p, lambda, M_trunc, l);
        s.convergence.push_back(lev.info);
        if (l == refine)
            detail::fill_field(s.field, lev.mesh, lev.u, 1, nullptr);
    }
    const auto& last = s.convergence.back();
    s.F_lambda = last.energy;
    s.mesh_stats = {M_trunc, last.elements, last.max_diameter};
    s.converged = detail::within_one_percent(s.convergence);
    return s;
}

/// Throws "not_converged" unless the two finest levels agree to 1%.
inline void require_converged(const CellSolution& s)
{
    if (!s.converged)
        throw solver_error("not_converged", "two finest levels differ by more than 1%");
}

} // namespace microrib
