// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/recovery.hpp"

#include "nsmlab/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nsm {

DivFreePair pair_from_potential(const SpectralField& F)
{
    const Grid& g = F.grid();
    DivFreePair out;
    out.potential = F;
    out.potential.set_bc(BoundaryCondition::Dirichlet0);
    out.first = ddy(F, BoundaryCondition::Dirichlet0);
    out.first.set_bc(BoundaryCondition::Neumann0);
    out.second = SpectralField(g, F.real(), BoundaryCondition::Dirichlet0);
    const int M = g.M();
    for (int m = 0; m < g.Nx; ++m) {
        if (F.real() && m == g.nyquist_slot()) continue;
        const cplx mik(0.0, -g.k(m));
        for (int j = 0; j < M; ++j) out.second(m, j) = mik * F(m, j);
    }
    if (F.real()) {
        // An unpaired Nyquist potential cannot produce a real first component either.
        for (int j = 0; j < M; ++j) out.first(g.nyquist_slot(), j) = 0.0;
    }
    return out;
}

DivFreePair recover_div_free_from_curl(const SpectralField& omega)
{
    const Grid& g = omega.grid();
    SpectralField F(g, omega.real(), BoundaryCondition::Dirichlet0);
    const double dy = g.dy();
    const Profile none;
    for (int m = 0; m < g.Nx; ++m) {
        if (omega.real() && m == g.nyquist_slot()) continue;
        const double k = g.k(m);
        F.set_profile(m, helmholtz_solve_mode(k, 1.0, k * k, none, omega.profile(m), dy,
                                              BoundaryCondition::Dirichlet0));
    }
    return pair_from_potential(F);
}

SpectralField curl_of_potential(const SpectralField& F)
{
    const Grid& g = F.grid();
    SpectralField w(g, F.real());
    const double dy = g.dy();
    for (int m = 0; m < g.Nx; ++m) {
        const double k = g.k(m);
        Profile lap = d2_profile(F.profile(m), dy);
        for (int j = 1; j < g.M() - 1; ++j) lap[j] -= k * k * F(m, j);
        w.set_profile(m, lap);
    }
    return w;
}

double pair_divergence_defect(const DivFreePair& p)
{
    const Grid& g = p.first.grid();
    const SpectralField dx = ddx(p.first);
    const SpectralField dys = ddy(p.second, BoundaryCondition::Dirichlet0);
    const double scale = std::max({dx.max_abs(), dys.max_abs(), 1e-300});
    double mx = 0.0;
    for (std::size_t i = 0; i < dx.size(); ++i) mx = std::max(mx, std::abs(dx.data()[i] + dys.data()[i]));
    (void)g;
    return mx / scale;
}

double pair_curl_defect(const DivFreePair& p, const SpectralField& omega)
{
    const SpectralField w = curl_of_potential(p.potential);
    const Grid& g = omega.grid();
    double mx = 0.0;
    const double scale = std::max(omega.max_abs(), 1e-300);
    for (int m = 0; m < g.Nx; ++m) {
        if (omega.real() && m == g.nyquist_slot()) continue;
        for (int j = 1; j < g.M() - 1; ++j) mx = std::max(mx, std::abs(w(m, j) - omega(m, j)));
    }
    return mx / scale;
}

VFromU v_from_u(const SpectralField& u)
{
    const Grid& g = u.grid();
    VFromU out;
    out.v = SpectralField(g, u.real(), BoundaryCondition::Dirichlet0);
    const double dy = g.dy();
    const int M = g.M();
    for (int m = 0; m < g.Nx; ++m) {
        if (u.real() && m == g.nyquist_slot()) continue;
        const double k = g.k(m);
        if (k == 0.0) continue;
        Profile c = cumtrapz(u.profile(m), dy);
        const cplx mik(0.0, -k);
        for (auto& z : c) z *= mik;
        out.top_violation = std::max(out.top_violation, std::abs(c[M - 1]));
        out.v.set_profile(m, c);
    }
    return out;
}

ProjectionResult pressure_projection_eps(const SpectralField& ru, const SpectralField& rv, double eps)
{
    if (ru.grid() != rv.grid()) fail(ErrorCode::InvalidArgument, "pressure_projection_eps: grid mismatch");
    if (!(eps > 0.0 && eps <= 1.0)) fail(ErrorCode::InvalidArgument, "pressure_projection_eps: eps must lie in (0,1]");
    const Grid& g = ru.grid();
    const int M = g.M();
    const double dy = g.dy();
    const double e2 = eps * eps;
    const bool real = ru.real() && rv.real();
    ProjectionResult out{SpectralField(g, real), SpectralField(g, real), SpectralField(g, real)};

    // Cumulative trapezoid as a dense lower-triangular operator.
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(M, M);
    for (int j = 1; j < M; ++j) {
        T(j, 0) = 0.5 * dy;
        for (int i = 1; i < j; ++i) T(j, i) = dy;
        T(j, j) = 0.5 * dy;
    }
    const int upper = real ? g.Nx / 2 : g.Nx;
    for (int m = 0; m < upper; ++m) {
        if (m == g.nyquist_slot() && real) continue;
        const double k = g.k(m);
        const Profile r_u = ru.profile(m);
        const Profile r_v = rv.profile(m);
        Profile p(M), du(M), dv(M);
        if (k == 0.0) {
            p = cumtrapz(r_v, dy);
            const cplx mean = trapz(p, dy);
            for (auto& z : p) z -= mean;
            du = r_u;
        } else {
            const cplx ik(0.0, k);
            const Profile Tru = cumtrapz(r_u, dy);
            Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(M, M);
            Eigen::VectorXcd b = Eigen::VectorXcd::Zero(M);
            // Cell i: p_{i+1} - p_i - dy/2 (g_i + g_{i+1}) = 0 with
            // g = rv + eps^2 ik T ru + eps^2 k^2 T p.
            for (int i = 0; i + 1 < M; ++i) {
                A(i, i + 1) += 1.0;
                A(i, i) -= 1.0;
                for (int c = 0; c < M; ++c)
                    A(i, c) -= 0.5 * dy * e2 * k * k * (T(i, c) + T(i + 1, c));
                b(i) = 0.5 * dy *
                       (r_v[i] + r_v[i + 1] + e2 * ik * (Tru[i] + Tru[i + 1]));
            }
            // Flux row: int_0^1 (ru - ik p) = 0.
            for (int c = 0; c < M; ++c) {
                const double w = (c == 0 || c == M - 1) ? 0.5 * dy : dy;
                A(M - 1, c) = ik * w;
            }
            b(M - 1) = trapz(r_u, dy);
            Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
            const Eigen::VectorXcd x = lu.solve(b);
            const double res = (A * x - b).norm();
            if (!(res <= 1e-8 * (A.norm() * x.norm() + b.norm())))
                fail(ErrorCode::Solver, "pressure_projection_eps: near-singular pressure system at k=" +
                                            std::to_string(k));
            for (int j = 0; j < M; ++j) {
                p[j] = x(j);
                du[j] = r_u[j] - ik * p[j];
            }
            dv = cumtrapz(du, dy);
            for (auto& z : dv) z *= -ik;
        }
        out.p.set_profile(m, p);
        out.du.set_profile(m, du);
        out.dv.set_profile(m, dv);
        if (real && m > 0) {
            const int mm = g.Nx - m;
            for (int j = 0; j < M; ++j) {
                out.p(mm, j) = std::conj(p[j]);
                out.du(mm, j) = std::conj(du[j]);
                out.dv(mm, j) = std::conj(dv[j]);
            }
        }
    }
    return out;
}

double projection_divergence_defect(const ProjectionResult& r)
{
    const Grid& g = r.du.grid();
    const int M = g.M();
    const double dy = g.dy();
    double mx = 0.0;
    double scale = 1e-300;
    for (int m = 0; m < g.Nx; ++m) {
        const double k = g.k(m);
        const auto d = box_divergence(k, r.du.mode(m), r.dv.mode(m), M, dy);
        for (int j = 0; j + 1 < M; ++j) {
            mx = std::max(mx, std::abs(d[j]));
            scale = std::max(scale, std::abs(k * r.du(m, j)));
        }
        mx = std::max(mx, std::abs(r.dv(m, M - 1)) / dy);
    }
    return mx / scale;
}

SpectralField hydrostatic_pressure(const SpectralField& e, const SpectralField& f,
                                   const SpectralField& v, const SpectralField& h, double alpha,
                                   const SpectralField* u_tendency)
{
    (void)f;
    const Grid& g = e.grid();
    const int M = g.M();
    const double dy = g.dy();
    SpectralField eh = dealiased_product(e, h);
    SpectralField vh = dealiased_product(v, h);
    SpectralField vhh = dealiased_product(vh, h);
    SpectralField integrand = e;
    integrand += eh;
    integrand += v;
    integrand.axpy(2.0, vh);
    integrand += vhh;
    integrand *= -alpha;
    SpectralField p(g, integrand.real());
    for (int m = 0; m < g.Nx; ++m) {
        Profile ptil = cumtrapz(integrand.profile(m), dy);
        const double k = g.k(m);
        if (u_tendency && k != 0.0) {
            // The u-tendency is carried on interior nodes only (walls stay at rest).
            const cplx ik(0.0, k);
            cplx su = 0.0, sp = 0.0;
            for (int j = 1; j < M - 1; ++j) {
                su += (*u_tendency)(m, j);
                sp += ptil[j];
            }
            const cplx ps = (su - ik * sp) / (ik * static_cast<double>(M - 2));
            for (auto& z : ptil) z += ps;
        }
        p.set_profile(m, ptil);
    }
    return p;
}

}  // namespace nsm
