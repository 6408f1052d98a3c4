// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"
#include "nsmlab/error.hpp"
#include "nsmlab/spectral.hpp"
#include "nsmlab/tridiag.hpp"

#include <cmath>
#include <sstream>

namespace nsm {

std::vector<cplx> to_physical(const SpectralField& f)
{
    const Grid& g = f.grid();
    std::vector<cplx> p = f.data();
    detail::fft_synthesize(g.Nx, g.M(), p.data());
    if (f.real()) {
        for (auto& z : p) z = z.real();
    }
    return p;
}

SpectralField from_physical(const Grid& g, const std::vector<cplx>& phys, bool real)
{
    SpectralField f(g, real);
    f.data() = phys;
    if (real) {
        for (auto& z : f.data()) z = z.real();
    }
    detail::fft_analyze(g.Nx, g.M(), f.data().data());
    return f;
}

SpectralField ddx(const SpectralField& f)
{
    const Grid& g = f.grid();
    SpectralField out(g, f.real(), f.bc());
    const int M = g.M();
    for (int m = 0; m < g.Nx; ++m) {
        // A real field cannot carry i*k at the unpaired Nyquist slot.
        if (f.real() && m == g.nyquist_slot()) continue;
        const cplx ik(0.0, g.k(m));
        const cplx* src = f.mode(m);
        cplx* dst = out.mode(m);
        for (int j = 0; j < M; ++j) dst[j] = ik * src[j];
    }
    return out;
}

Profile ddy_profile(const Profile& f, double dy, BoundaryCondition bc)
{
    const int M = static_cast<int>(f.size());
    Profile d(M);
    const double h2 = 0.5 / dy;
    for (int j = 1; j < M - 1; ++j) d[j] = (f[j + 1] - f[j - 1]) * h2;
    if (bc == BoundaryCondition::Dirichlet0) {
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * h2;
        d[M - 1] = (3.0 * f[M - 1] - 4.0 * f[M - 2] + f[M - 3]) * h2;
    } else {
        d[0] = 0.0;
        d[M - 1] = 0.0;
    }
    return d;
}

SpectralField ddy(const SpectralField& f, BoundaryCondition bc)
{
    const Grid& g = f.grid();
    SpectralField out(g, f.real(), f.bc());
    const int M = g.M();
    const double dy = g.dy();
    for (int m = 0; m < g.Nx; ++m) {
        Profile p(f.mode(m), f.mode(m) + M);
        out.set_profile(m, ddy_profile(p, dy, bc));
    }
    return out;
}

Profile d2_profile(const Profile& f, double dy)
{
    const int M = static_cast<int>(f.size());
    Profile d(M);
    const double r = 1.0 / (dy * dy);
    for (int j = 1; j < M - 1; ++j) d[j] = (f[j - 1] - 2.0 * f[j] + f[j + 1]) * r;
    return d;
}

Profile cumtrapz(const Profile& f, double dy)
{
    const int M = static_cast<int>(f.size());
    Profile c(M);
    for (int j = 1; j < M; ++j) c[j] = c[j - 1] + 0.5 * dy * (f[j - 1] + f[j]);
    return c;
}

cplx trapz(const cplx* f, int M, double dy)
{
    cplx s = 0.5 * (f[0] + f[M - 1]);
    for (int j = 1; j < M - 1; ++j) s += f[j];
    return s * dy;
}

cplx trapz(const Profile& f, double dy)
{
    return trapz(f.data(), static_cast<int>(f.size()), dy);
}

double l2_norm(const Profile& f, double dy)
{
    const int M = static_cast<int>(f.size());
    double s = 0.5 * (std::norm(f[0]) + std::norm(f[M - 1]));
    for (int j = 1; j < M - 1; ++j) s += std::norm(f[j]);
    return std::sqrt(s * dy);
}

double dplus_norm(const Profile& f, double dy)
{
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < f.size(); ++j) s += std::norm(f[j + 1] - f[j]);
    return std::sqrt(s / dy);
}

void dealias(SpectralField& f)
{
    const Grid& g = f.grid();
    const int cut = g.dealias_cutoff();
    const int M = g.M();
    for (int m = 0; m < g.Nx; ++m) {
        const int q = g.kint(m);
        if (std::abs(q) > cut || m == g.nyquist_slot()) {
            cplx* p = f.mode(m);
            for (int j = 0; j < M; ++j) p[j] = 0.0;
        }
    }
}

SpectralField dealiased_product(const SpectralField& f, const SpectralField& g)
{
    if (f.grid() != g.grid()) fail(ErrorCode::InvalidArgument, "dealiased_product: grid mismatch");
    SpectralField a = f;
    SpectralField b = g;
    dealias(a);
    dealias(b);
    std::vector<cplx> pa = to_physical(a);
    const std::vector<cplx> pb = to_physical(b);
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    SpectralField out = from_physical(f.grid(), pa, f.real() && g.real());
    dealias(out);
    return out;
}

namespace {

[[noreturn]] void singular(double k, cplx b)
{
    std::ostringstream os;
    os.precision(12);
    os << "helmholtz_solve_mode: near-singular system at k=" << k << ", b=(" << b.real() << ","
       << b.imag() << ")";
    fail(ErrorCode::Solver, os.str());
}

cplx qat(const Profile& q, int j) { return q.empty() ? cplx{} : q[j]; }

bool q_is_zero(const Profile& q)
{
    for (const auto& z : q)
        if (z != cplx{}) return false;
    return true;
}

}  // namespace

Profile helmholtz_solve_mode(double k, double a, cplx b, const Profile& q, const Profile& rhs,
                             double dy, BoundaryCondition bc)
{
    const int M = static_cast<int>(rhs.size());
    if (M < 4) fail(ErrorCode::InvalidArgument, "helmholtz_solve_mode: profile too short");
    if (!q.empty() && static_cast<int>(q.size()) != M)
        fail(ErrorCode::InvalidArgument, "helmholtz_solve_mode: q length mismatch");
    if (!(a > 0.0)) fail(ErrorCode::InvalidArgument, "helmholtz_solve_mode: a must be positive");
    const double r = a / (dy * dy);
    Profile u(M);
    if (bc == BoundaryCondition::Dirichlet0) {
        const int N = M - 2;
        Tridiag t(N);
        std::vector<cplx> x(N);
        for (int i = 0; i < N; ++i) {
            const int j = i + 1;
            t.lower[i] = r;
            t.upper[i] = r;
            t.diag[i] = -2.0 * r - b - qat(q, j);
            x[i] = rhs[j];
        }
        TridiagLU lu;
        if (!lu.factor(t)) singular(k, b);
        lu.solve(x);
        for (int i = 0; i < N; ++i) u[i + 1] = x[i];
        return u;
    }
    const bool gauge = (b == cplx{}) && q_is_zero(q);
    Tridiag t(M);
    std::vector<cplx> x(rhs.begin(), rhs.end());
    for (int j = 0; j < M; ++j) {
        t.diag[j] = -2.0 * r - b - qat(q, j);
        t.lower[j] = (j == M - 1) ? 2.0 * r : r;
        t.upper[j] = (j == 0) ? 2.0 * r : r;
    }
    if (gauge) {
        // Remove the incompatible part (trapezoid weights span the left null space),
        // pin u_0 = 0, then shift to zero y-mean.
        const cplx mean = trapz(x, dy);
        for (auto& z : x) z -= mean;
        t.diag[0] = 1.0;
        t.upper[0] = 0.0;
        x[0] = 0.0;
    }
    TridiagLU lu;
    if (!lu.factor(t)) singular(k, b);
    lu.solve(x);
    if (gauge) {
        const cplx mean = trapz(x, dy);
        for (auto& z : x) z -= mean;
    }
    return Profile(x.begin(), x.end());
}

Profile helmholtz_apply_mode(double a, cplx b, const Profile& q, const Profile& u, double dy,
                             BoundaryCondition bc)
{
    const int M = static_cast<int>(u.size());
    const double r = a / (dy * dy);
    Profile out(M);
    for (int j = 1; j < M - 1; ++j)
        out[j] = r * (u[j - 1] - 2.0 * u[j] + u[j + 1]) - (b + qat(q, j)) * u[j];
    if (bc == BoundaryCondition::Neumann0) {
        out[0] = r * (2.0 * u[1] - 2.0 * u[0]) - (b + qat(q, 0)) * u[0];
        out[M - 1] = r * (2.0 * u[M - 2] - 2.0 * u[M - 1]) - (b + qat(q, M - 1)) * u[M - 1];
    }
    return out;
}

std::vector<cplx> box_divergence(double k, const cplx* u, const cplx* v, int M, double dy)
{
    std::vector<cplx> d(M - 1);
    const cplx ik(0.0, k);
    for (int j = 0; j + 1 < M; ++j) d[j] = ik * 0.5 * (u[j] + u[j + 1]) + (v[j + 1] - v[j]) / dy;
    return d;
}

}  // namespace nsm
