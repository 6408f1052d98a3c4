// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/recovery.hpp"
#include "nsmlab/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace nsm {

namespace {

/// Vertical-momentum operator acting on u through V = -ik int_0^y u:
/// eps^2 (d_y V_y - eps^2 k^2 V) - alpha V with V_y = -ik u.
Profile yop(const Profile& u, const Profile& V, double k, double e2, double alpha, double dy)
{
    const int M = static_cast<int>(u.size());
    Profile y(M);
    const cplx ik(0.0, k);
    if (e2 > 0.0) {
        const Profile uy = ddy_profile(u, dy, BoundaryCondition::Dirichlet0);
        for (int j = 0; j < M; ++j) y[j] = e2 * (-ik * uy[j] - e2 * k * k * V[j]) - alpha * V[j];
    } else {
        for (int j = 0; j < M; ++j) y[j] = -alpha * V[j];
    }
    return y;
}

Profile vmap(const Profile& u, double k, double dy)
{
    Profile V = cumtrapz(u, dy);
    const cplx mik(0.0, -k);
    for (auto& z : V) z *= mik;
    return V;
}

struct ModeCoefs {
    double k, e2, alpha, dt, theta, dy, lu_shift;
};

/// Linear part of the coupled (u^{n+1}, p0) system. x holds u on interior nodes and p0 last.
Eigen::VectorXcd apply_coupled(const Eigen::VectorXcd& x, const ModeCoefs& c, int M)
{
    const int N = M - 2;
    Profile u(M);
    for (int i = 0; i < N; ++i) u[i + 1] = x(i);
    const cplx p0 = x(N);
    const Profile V = vmap(u, c.k, c.dy);
    const Profile Y = yop(u, V, c.k, c.e2, c.alpha, c.dy);
    Profile G(M);
    for (int j = 0; j < M; ++j) G[j] = -c.e2 * V[j] / c.dt + c.theta * Y[j];
    const Profile P = cumtrapz(G, c.dy);
    const Profile D2 = d2_profile(u, c.dy);
    const cplx ik(0.0, c.k);
    Eigen::VectorXcd r(N + 1);
    for (int i = 0; i < N; ++i) {
        const int j = i + 1;
        const cplx Lu = D2[j] - c.lu_shift * u[j];
        r(i) = u[j] / c.dt - c.theta * Lu + ik * (p0 + P[j]);
    }
    r(N) = trapz(u, c.dy) / c.dt;
    return r;
}

void mirror(SpectralField& f, int m, const Grid& g)
{
    const int mm = g.Nx - m;
    const int M = g.M();
    for (int j = 0; j < M; ++j) f(mm, j) = std::conj(f(m, j));
}

SpectralField ab2(const SpectralField& cur, const SpectralField& prev, bool first)
{
    if (first) return cur;
    SpectralField out = cur;
    out *= 1.5;
    out.axpy(-0.5, prev);
    return out;
}

}  // namespace

struct ImexIntegrator::Cache {
    std::map<std::pair<int, double>, Eigen::PartialPivLU<Eigen::MatrixXcd>> lu;
};

ImexIntegrator::ImexIntegrator(NSMState s, SolverOptions opt)
    : state_(std::move(s)), opt_(opt), cache_(std::make_unique<Cache>())
{
    if (!(opt_.dt > 0.0) || !std::isfinite(opt_.dt)) fail(ErrorCode::InvalidArgument, "time.dt must be positive");
    validate_params(state_.params);
}

ImexIntegrator::~ImexIntegrator() = default;
ImexIntegrator::ImexIntegrator(ImexIntegrator&&) noexcept = default;
ImexIntegrator& ImexIntegrator::operator=(ImexIntegrator&&) noexcept = default;

void ImexIntegrator::step()
{
    NSMState& s = state_;
    const Grid& g = s.grid;
    const PhysicalParams& P = s.params;
    const int M = g.M();
    const int N = M - 2;
    const double dy = g.dy();
    const double dt = opt_.dt;
    const SolverMode mode = opt_.mode;
    const bool linear = mode == SolverMode::Linear;
    const bool first = steps_ == 0;
    const double th = (first && !linear) ? 1.0 : 0.5;
    const double e2 = mode == SolverMode::Hydrostatic ? 0.0 : P.eps * P.eps;
    const double alpha = linear ? 0.0 : P.alpha;

    if (opt_.check_cfl && !linear) {
        const std::vector<cplx> pu = to_physical(s.u);
        const std::vector<cplx> pv = to_physical(s.v);
        double mu = 0.0, mv = 0.0;
        for (const auto& z : pu) mu = std::max(mu, std::abs(z));
        for (const auto& z : pv) mv = std::max(mv, std::abs(z));
        const double dx = g.Lx / g.Nx;
        double lim = std::numeric_limits<double>::infinity();
        if (mu > 0.0) lim = std::min(lim, dx / mu);
        if (mv > 0.0) lim = std::min(lim, dy / mv);
        if (dt > opt_.cfl * lim) {
            std::ostringstream os;
            os << "CFL violated: dt=" << dt << " exceeds " << opt_.cfl * lim;
            fail(ErrorCode::Cfl, os.str());
        }
    }

    ExplicitTerms cur = explicit_terms(s, mode);
    const SpectralField Nu = ab2(cur.Nu, prev_.Nu, first || linear);
    const SpectralField Nv = ab2(cur.Nv, prev_.Nv, first || linear);
    const SpectralField Nh = ab2(cur.Nh, prev_.Nh, first || linear);

    SpectralField u1(g, true, BoundaryCondition::Dirichlet0);
    SpectralField p1(g, true, BoundaryCondition::Neumann0);
    SpectralField h1(g, true, BoundaryCondition::Dirichlet0);
    SpectralField ht1(g, true, BoundaryCondition::Dirichlet0);

    const int upper = g.Nx / 2;
    for (int m = 0; m < upper; ++m) {
        const double k = g.k(m);
        const Profile un = s.u.profile(m);

        // Momentum and pressure.
        if (linear) {
            const double b = 1.0 / dt + th * e2 * k * k;
            Profile D2 = d2_profile(un, dy);
            Profile rhs(M);
            for (int j = 1; j < M - 1; ++j) {
                const cplx Lu = D2[j] - P.eps * P.eps * k * k * un[j];
                rhs[j] = -(un[j] / dt + (1.0 - th) * Lu);
            }
            u1.set_profile(m, helmholtz_solve_mode(k, th, b, {}, rhs, dy, BoundaryCondition::Dirichlet0));
        } else if (k == 0.0) {
            const double b = 1.0 / dt + th * alpha;
            const Profile D2 = d2_profile(un, dy);
            Profile rhs(M);
            for (int j = 1; j < M - 1; ++j) {
                const cplx Lu = D2[j] - alpha * un[j];
                rhs[j] = -(un[j] / dt + (1.0 - th) * Lu + Nu(m, j));
            }
            u1.set_profile(m, helmholtz_solve_mode(k, th, b, {}, rhs, dy, BoundaryCondition::Dirichlet0));
            Profile p = cumtrapz(Nv.profile(m), dy);
            const cplx mean = trapz(p, dy);
            for (auto& z : p) z -= mean;
            p1.set_profile(m, p);
        } else {
            const ModeCoefs c{k, e2, alpha, dt, th, dy, e2 * k * k + alpha};
            auto key = std::make_pair(m, th);
            auto it = cache_->lu.find(key);
            if (it == cache_->lu.end()) {
                Eigen::MatrixXcd A(N + 1, N + 1);
                Eigen::VectorXcd ej = Eigen::VectorXcd::Zero(N + 1);
                for (int col = 0; col <= N; ++col) {
                    ej.setZero();
                    ej(col) = 1.0;
                    A.col(col) = apply_coupled(ej, c, M);
                }
                Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
                const double rc = lu.rcond();
                if (!(rc > 1e-14)) {
                    std::ostringstream os;
                    os << "coupled momentum system near-singular at k=" << k << " (rcond " << rc << ")";
                    fail(ErrorCode::Solver, os.str());
                }
                it = cache_->lu.emplace(key, std::move(lu)).first;
            }
            const Profile Vn = vmap(un, k, dy);
            const Profile Yn = yop(un, Vn, k, e2, alpha, dy);
            Profile Gk(M);
            for (int j = 0; j < M; ++j) Gk[j] = e2 * Vn[j] / dt + (1.0 - th) * Yn[j] + Nv(m, j);
            const Profile pk = cumtrapz(Gk, dy);
            const Profile D2 = d2_profile(un, dy);
            const cplx ik(0.0, k);
            Eigen::VectorXcd rhs(N + 1);
            for (int i = 0; i < N; ++i) {
                const int j = i + 1;
                const cplx Lu = D2[j] - c.lu_shift * un[j];
                rhs(i) = un[j] / dt + (1.0 - th) * Lu + Nu(m, j) - ik * pk[j];
            }
            rhs(N) = 0.0;
            const Eigen::VectorXcd x = it->second.solve(rhs);
            Profile u(M);
            for (int i = 0; i < N; ++i) u[i + 1] = x(i);
            const Profile V = vmap(u, k, dy);
            const Profile Y = yop(u, V, k, e2, alpha, dy);
            Profile G(M);
            for (int j = 0; j < M; ++j) G[j] = -e2 * V[j] / dt + th * Y[j];
            Profile p = cumtrapz(G, dy);
            for (int j = 0; j < M; ++j) p[j] += x(N) + pk[j];
            u1.set_profile(m, u);
            p1.set_profile(m, p);
        }

        // Wave equation as (h, h_t).
        const double eh2 = mode == SolverMode::Hydrostatic ? 0.0 : P.eps * P.eps;
        const Profile hn = s.h.profile(m);
        const Profile htn = s.ht.profile(m);
        const double bdt = P.beta / dt;
        const double c1 = (bdt + th) / (th * dt);
        const double cht = (bdt + th) * (1.0 - th) / th + bdt - (1.0 - th);
        const Profile D2h = d2_profile(hn, dy);
        Profile rhs(M);
        for (int j = 1; j < M - 1; ++j) {
            const cplx Lh = D2h[j] - eh2 * k * k * hn[j];
            rhs[j] = -(c1 * hn[j] + cht * htn[j] + P.gamma * (1.0 - th) * Lh + Nh(m, j));
        }
        const Profile H = helmholtz_solve_mode(k, P.gamma * th, c1 + P.gamma * th * eh2 * k * k, {}, rhs, dy,
                                               BoundaryCondition::Dirichlet0);
        Profile Ht(M);
        for (int j = 1; j < M - 1; ++j) Ht[j] = (H[j] - hn[j]) / (th * dt) - ((1.0 - th) / th) * htn[j];
        h1.set_profile(m, H);
        ht1.set_profile(m, Ht);

        if (m > 0) {
            mirror(u1, m, g);
            mirror(p1, m, g);
            mirror(h1, m, g);
            mirror(ht1, m, g);
        }
    }
    for (int j = 0; j < M; ++j) {
        u1(0, j) = u1(0, j).real();
        p1(0, j) = p1(0, j).real();
        h1(0, j) = h1(0, j).real();
        ht1(0, j) = ht1(0, j).real();
    }

    const VFromU vf = v_from_u(u1);
    SpectralField ut = u1;
    ut -= s.u;
    ut *= 1.0 / dt;
    SpectralField vt = vf.v;
    vt -= s.v;
    vt *= 1.0 / dt;

    const DivFreePair pr = recover_div_free_from_curl(ht1);

    s.u = std::move(u1);
    s.v = vf.v;
    s.p = std::move(p1);
    s.h = std::move(h1);
    s.ht = std::move(ht1);
    s.e = pr.first;
    s.f = pr.second;
    s.F = pr.potential;
    s.ut = std::move(ut);
    s.vt = std::move(vt);
    s.t += dt;
    prev_ = std::move(cur);
    ++steps_;
}

NSMState step_imex(const NSMState& s, double dt)
{
    SolverOptions o;
    o.mode = SolverMode::Full;
    o.dt = dt;
    ImexIntegrator it(s, o);
    it.step();
    return it.state();
}

}  // namespace nsm
