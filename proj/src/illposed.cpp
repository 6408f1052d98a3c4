// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/illposed.hpp"

#include "nsmlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsm {

namespace {

const cplx kEighth = std::polar(1.0, kPi / 4.0);

cplx dispersion_rhs(double K) { return cplx(0.0, K / 4.0) - kEighth * std::sqrt(K); }

}  // namespace

DispersionRoot dispersion_root_unchecked(int k)
{
    if (k == 0) fail(ErrorCode::InvalidArgument, "dispersion_root: k must be nonzero");
    const double K = std::abs(static_cast<double>(k));
    const cplx rhs = dispersion_rhs(K);
    const cplx d = std::sqrt(1.0 + 4.0 * rhs);
    const cplx r1 = 0.5 * (-1.0 + d);
    const cplx r2 = 0.5 * (-1.0 - d);
    DispersionRoot out;
    out.k = k;
    out.c = r1.real() >= r2.real() ? r1 : r2;
    out.c_other = r1.real() >= r2.real() ? r2 : r1;
    out.residual = std::abs(out.c * out.c + out.c - rhs);
    out.printed = -0.5 + std::sqrt(cplx(1.0, 4.0 * K) - 4.0 * std::sqrt(K) * kEighth);
    out.printed_residual = std::abs(out.printed * out.printed + out.printed - rhs);
    const double lo = std::sqrt(K), hi = std::sqrt(2.0 * K);
    out.bracket_derived = out.c.real() >= lo && out.c.real() <= hi;
    out.bracket_printed = out.printed.real() >= lo && out.printed.real() <= hi;
    return out;
}

DispersionRoot dispersion_root(int k)
{
    DispersionRoot r = dispersion_root_unchecked(k);
    if (!(r.c.real() > 0.0)) {
        std::ostringstream os;
        os << "dispersion_root: no root with positive real part at k=" << k << " (below threshold "
           << illposedness_threshold() << ")";
        fail(ErrorCode::BelowThreshold, os.str());
    }
    return r;
}

int illposedness_threshold(int search_max)
{
    int last = 0;
    for (int K = 1; K <= search_max; ++K)
        if (!(dispersion_root_unchecked(K).c.real() > 0.0)) last = K;
    return last + 1;
}

int required_ny(int k)
{
    return static_cast<int>(std::ceil(40.0 * std::pow(std::abs(static_cast<double>(k)), 0.25) - 1e-9));
}

Profile quasimode_profile(int k, int Ny, double m0)
{
    if (k == 0) fail(ErrorCode::InvalidArgument, "quasimode_profile: k must be nonzero");
    const int need = required_ny(k);
    if (Ny < need) {
        std::ostringstream os;
        os << "quasimode_profile: Ny=" << Ny << " violates the resolution rule at k=" << k << "; need Ny >= "
           << need;
        fail(ErrorCode::Resolution, os.str());
    }
    const double K = std::abs(static_cast<double>(k));
    const cplx a = 0.5 * kEighth * std::sqrt(K);
    const int M = Ny + 2;
    const double dy = 1.0 / (Ny + 1);
    Profile f(M);
    for (int j = 0; j < M; ++j) {
        const double z = j * dy - 0.5;
        f[j] = m0 * std::exp(-a * z * z);
    }
    return f;
}

double ModeProblem::Tk() const
{
    return 2.0 * par.C0 * std::pow(std::abs(static_cast<double>(k)), par.s_growth - 0.5);
}

ModeProblem make_mode_problem(int k, const IllposedParams& par, int Ny)
{
    if (k >= 0) fail(ErrorCode::InvalidArgument, "mode problem requires k < 0");
    if (!(par.theta1 > 0.0 && par.theta1 < 1.0 / (16.0 * std::sqrt(2.0))))
        fail(ErrorCode::InvalidArgument, "illposedness.theta1 must lie in (0, 1/(16 sqrt 2))");
    if (!(par.s_growth >= 0.0 && par.s_growth < 0.5))
        fail(ErrorCode::InvalidArgument, "illposedness.s_growth must lie in [0, 1/2)");
    if (!(par.C0 > 0.0) || !(par.T0 > 0.0) || !(par.dt > 0.0) || !(par.m0 > 0.0))
        fail(ErrorCode::InvalidArgument, "illposedness C0, T0, dt, m0 must be positive");
    const int M0 = illposedness_threshold();
    if (std::abs(k) < M0) {
        std::ostringstream os;
        os << "|k|=" << std::abs(k) << " is below the threshold M=" << M0;
        fail(ErrorCode::BelowThreshold, os.str());
    }
    ModeProblem p;
    p.k = k;
    p.par = par;
    p.c = dispersion_root(k).c;
    const int need = required_ny(k);
    p.Ny = Ny > 0 ? Ny : static_cast<int>(std::ceil(std::max(1.0, par.ny_factor) * need));
    if (p.Ny < need) {
        std::ostringstream os;
        os << "Ny=" << p.Ny << " violates the resolution rule at k=" << k << "; need Ny >= " << need;
        fail(ErrorCode::Resolution, os.str());
    }
    return p;
}

Profile explicit_solution_h1(const ModeProblem& p, double t)
{
    const Profile f = quasimode_profile(p.k, p.Ny, p.par.m0);
    const double K = std::abs(static_cast<double>(p.k));
    const cplx amp = std::pow(K, -0.625) * std::exp(p.c * t);
    Profile h(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) h[j] = amp * (f[j] - f[0]);
    h.front() = 0.0;
    h.back() = 0.0;
    return h;
}

InitialPair initial_pair(const ModeProblem& p)
{
    InitialPair ip;
    ip.zeta = explicit_solution_h1(p, 0.0);
    ip.zeta1.resize(ip.zeta.size());
    ip.a_k.resize(ip.zeta.size());
    ip.b_k.resize(ip.zeta.size());
    for (std::size_t j = 0; j < ip.zeta.size(); ++j) {
        ip.zeta1[j] = p.c * ip.zeta[j];
        // Re(z e^{ikx}) = Re z cos kx - Im z sin kx.
        ip.a_k[j] = ip.zeta[j].real();
        ip.b_k[j] = -ip.zeta[j].imag();
    }
    return ip;
}

Profile boundary_forcing(const ModeProblem& p, double t)
{
    const Profile f = quasimode_profile(p.k, p.Ny, p.par.m0);
    const double K = std::abs(static_cast<double>(p.k));
    const cplx base = std::pow(K, -0.625) * std::exp(p.c * t) * f[0];
    const int M = p.Ny + 2;
    const double dy = p.dy();
    Profile F(M);
    const cplx c2c = p.c * p.c + p.c;
    for (int j = 1; j < M - 1; ++j) {
        const double y = j * dy;
        F[j] = base * (c2c + cplx(0.0, p.k * y * (1.0 - y)));
    }
    return F;
}

double h1_norm(const Profile& h, double dy)
{
    const double l2 = l2_norm(h, dy);
    const double d = dplus_norm(h, dy);
    return std::sqrt(l2 * l2 + d * d);
}

Profile poiseuille_profile(int Ny)
{
    const int M = Ny + 2;
    const double dy = 1.0 / (Ny + 1);
    Profile V(M);
    for (int j = 0; j < M; ++j) V[j] = j * dy * (1.0 - j * dy);
    return V;
}

ModeTrajectory integrate_mode_wave(double k, const Profile& V, const Profile& h0, const Profile& ht0,
                                   const ForcingFn& forcing, double T, double dt, bool keep_profiles)
{
    const int M = static_cast<int>(h0.size());
    if (static_cast<int>(V.size()) != M || static_cast<int>(ht0.size()) != M)
        fail(ErrorCode::InvalidArgument, "integrate_mode_wave: profile length mismatch");
    if (!(dt > 0.0) || !(T >= 0.0)) fail(ErrorCode::InvalidArgument, "integrate_mode_wave: bad T or dt");
    const double dy = 1.0 / (M - 1);
    const double a = 0.5 * dt;
    const cplx ik(0.0, k);
    Profile q(M);
    for (int j = 0; j < M; ++j) q[j] = a * ik * V[j];
    const double b = (1.0 + a) / a;

    Profile h = h0, w = ht0;
    h.front() = h.back() = 0.0;
    w.front() = w.back() = 0.0;
    ModeTrajectory tr;
    auto push = [&](double t) {
        tr.t.push_back(t);
        tr.l2.push_back(l2_norm(h, dy));
        tr.h1.push_back(h1_norm(h, dy));
        if (keep_profiles) tr.h.push_back(h);
    };
    push(0.0);
    const long n = static_cast<long>(std::llround(T / dt));
    Profile Fn = forcing ? forcing(0.0) : Profile();
    for (long s = 0; s < n; ++s) {
        const double t1 = (s + 1) * dt;
        Profile F1 = forcing ? forcing(t1) : Profile();
        const Profile D2 = d2_profile(h, dy);
        Profile rhs(M);
        for (int j = 1; j < M - 1; ++j) {
            const cplx Lh = D2[j] - ik * V[j] * h[j];
            cplx r = b * h[j] + 2.0 * w[j] + a * Lh;
            if (forcing) r += a * (F1[j] + Fn[j]);
            rhs[j] = -r;
        }
        const Profile H = helmholtz_solve_mode(k, a, b, q, rhs, dy, BoundaryCondition::Dirichlet0);
        for (int j = 1; j < M - 1; ++j) w[j] = (H[j] - h[j]) / a - w[j];
        h = H;
        Fn = std::move(F1);
        push(t1);
    }
    return tr;
}

GrowthFit growth_exponent(const ModeTrajectory& tr, double t0, double t1, bool use_h1)
{
    const std::vector<double>& nrm = use_h1 ? tr.h1 : tr.l2;
    const double tol = 1e-12 * std::max(1.0, std::abs(t1));
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        if (tr.t[i] < t0 - tol || tr.t[i] > t1 + tol) continue;
        if (!(nrm[i] > 0.0)) fail(ErrorCode::InvalidArgument, "growth_exponent: non-positive norm in window");
        xs.push_back(tr.t[i]);
        ys.push_back(std::log(nrm[i]));
    }
    if (xs.size() < 2) fail(ErrorCode::InvalidArgument, "growth_exponent: window holds fewer than 2 samples");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    GrowthFit g;
    g.n = static_cast<int>(xs.size());
    g.rate = sxy / sxx;
    g.intercept = my - g.rate * mx;
    g.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return g;
}

GrowthCheck theorem_growth_check(const ModeProblem& p)
{
    GrowthCheck gc;
    gc.k = p.k;
    gc.root = dispersion_root(p.k);
    gc.Ny = p.Ny;
    gc.Tk = p.Tk();
    gc.T0 = p.par.T0;
    if (!(gc.Tk < gc.T0)) {
        std::ostringstream os;
        os << "growth window empty: T_k=" << gc.Tk << " >= T0=" << gc.T0;
        fail(ErrorCode::InvalidArgument, os.str());
    }
    const double K = std::abs(static_cast<double>(p.k));
    const double dy = p.dy();
    const double dt = p.par.dt;
    const double T0 = p.par.T0;
    const InitialPair ip = initial_pair(p);
    const Profile V = poiseuille_profile(p.Ny);
    const Profile zero(ip.zeta.size());

    const ModeTrajectory full = integrate_mode_wave(p.k, V, ip.zeta, ip.zeta1, {}, T0, dt, true);
    const ForcingFn minusF = [&](double t) {
        Profile F = boundary_forcing(p, t);
        for (auto& z : F) z = -z;
        return F;
    };
    const ForcingFn plusF = [&](double t) { return boundary_forcing(p, t); };
    const ModeTrajectory forced1 = integrate_mode_wave(p.k, V, ip.zeta, ip.zeta1, minusF, T0, dt, true);
    const ModeTrajectory forced2 = integrate_mode_wave(p.k, V, zero, zero, plusF, T0, dt, true);

    for (std::size_t n = 0; n < full.t.size(); ++n) {
        const Profile h1 = explicit_solution_h1(p, full.t[n]);
        Profile h2(h1.size()), sup(h1.size()), d1(h1.size());
        for (std::size_t j = 0; j < h1.size(); ++j) {
            h2[j] = full.h[n][j] - h1[j];
            sup[j] = full.h[n][j] - forced1.h[n][j] - forced2.h[n][j];
            d1[j] = forced1.h[n][j] - h1[j];
        }
        gc.h2_sup = std::max(gc.h2_sup, l2_norm(h2, dy));
        const double ref = std::max(l2_norm(full.h[n], dy), 1e-300);
        gc.superposition = std::max(gc.superposition, l2_norm(sup, dy) / ref);
        gc.h1_match = std::max(gc.h1_match, l2_norm(d1, dy) / std::max(l2_norm(h1, dy), 1e-300));
    }
    gc.h2_scaled = gc.h2_sup * std::exp(0.5 * p.par.delta * std::sqrt(K));
    gc.h2_small = gc.h2_scaled <= p.par.kappa;

    gc.fit = growth_exponent(full, gc.Tk, T0, true);
    gc.fit_l2 = growth_exponent(full, gc.Tk, T0, false);
    gc.rel_rate_error = std::abs(gc.fit.rate - gc.root.c.real()) / gc.root.c.real();

    gc.zeta_h1 = h1_norm(ip.zeta, dy);
    gc.zeta_l2 = l2_norm(ip.zeta, dy);
    gc.m0_measured = std::sqrt(K) * gc.zeta_h1;

    const long last = static_cast<long>(full.t.size()) - 1;
    gc.check_times = {gc.Tk, 0.5 * (gc.Tk + T0), T0 - dt};
    gc.lower_bound_pass = true;
    for (double t : gc.check_times) {
        const long i = std::clamp(static_cast<long>(std::llround(t / dt)), 0L, last);
        const double bound = 0.5 * gc.m0_measured / std::sqrt(K) * std::exp(gc.root.c.real() * full.t[i]);
        gc.check_norm.push_back(full.h1[i]);
        gc.check_bound.push_back(bound);
        if (!(full.h1[i] >= bound)) gc.lower_bound_pass = false;
    }

    const Profile F0 = boundary_forcing(p, 0.0);
    for (const auto& z : F0) gc.forcing_sup0 = std::max(gc.forcing_sup0, std::abs(z));
    gc.forcing_K = gc.forcing_sup0 / (std::pow(K, 0.375) * std::exp(-std::sqrt(K) / (8.0 * std::sqrt(2.0))));
    return gc;
}

}  // namespace nsm
