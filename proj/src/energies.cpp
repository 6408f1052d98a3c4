// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/energies.hpp"

#include <cmath>

namespace nsm {

namespace {

double sq(const SpectralField& f, const GevreyWeight& w, double s)
{
    const double n = gevrey_norm(f, w.with_s(s), NormKind::L2);
    return n * n;
}

double dyp(const SpectralField& f, const GevreyWeight& w, double s)
{
    const double n = gevrey_norm_dyplus(f, w.with_s(s));
    return n * n;
}

bool finite_all(std::initializer_list<double> xs)
{
    for (double x : xs)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

double dt_weighted_sq(const SpectralField& phi, const SpectralField& phi_t, const GevreyWeight& w_r)
{
    const Grid& g = phi.grid();
    const double ld = lambda_schedule(w_r.schedule, w_r.t).dlambda;
    SpectralField q = phi_t;
    const int M = g.M();
    for (int m = 0; m < g.Nx; ++m) {
        const double c = ld * std::sqrt(japanese(g.k(m)));
        for (int j = 0; j < M; ++j) q(m, j) -= c * phi(m, j);
    }
    const double n = gevrey_norm(q, w_r, NormKind::L2);
    return n * n;
}

EnergyReport compute_energies(const NSMState& st, const GevreyWeight& w_in, EnergyVariant variant,
                              double theta)
{
    const GevreyWeight w = w_in.at(st.t);
    const PhysicalParams& P = st.params;
    const double e2 = P.eps * P.eps;
    const double s = w.s;
    const double sg = w.sigma();
    const LambdaState ls = lambda_schedule(w.schedule, st.t);
    const double ld = ls.dlambda;

    EnergyReport r;
    r.t = st.t;
    r.lambda = ls.lambda;
    r.dlambda = ld;

    const SpectralField ux = ddx(st.u);
    const SpectralField vx = ddx(st.v);
    const SpectralField hx = ddx(st.h);

    r.E_u = sq(st.u, w, s) + e2 * sq(st.v, w, s);
    r.D_u = 2.0 * e2 * sq(ux, w, s) + e2 * e2 * sq(vx, w, s) + dyp(st.u, w, s) +
            P.alpha * (sq(st.u, w, s) + sq(st.v, w, s));
    r.CK_u = ld * (sq(st.u, w, s + 0.25) + e2 * sq(st.v, w, s + 0.25));

    const double grad_sg = e2 * sq(hx, w, sg) + dyp(st.h, w, sg);
    const double grad_sg4 = e2 * sq(hx, w, sg + 0.25) + dyp(st.h, w, sg + 0.25);
    r.E_h = 0.5 * P.beta * sq(st.ht, w, sg) + 0.5 * P.gamma * grad_sg +
            0.5 * P.beta * ld * ld * sq(st.h, w, sg + 0.5);
    r.D_h = sq(st.ht, w, sg);
    r.CK_h = 0.5 * P.beta * ld * sq(st.ht, w, sg + 0.25) + P.gamma * ld * grad_sg4 +
             0.5 * P.beta * (ld * dt_weighted_sq(st.h, st.ht, w.with_s(sg + 0.25)) + ld * ld * ld * sq(st.h, w, s));

    r.E_u_low = dyp(st.u, w, s - 2.0) + 2.0 * e2 * sq(ux, w, s - 2.0) + e2 * e2 * sq(vx, w, s - 2.0);
    r.D_u_low = sq(st.ut, w, s - 2.0) + e2 * sq(st.vt, w, s - 2.0);
    r.CK_u_low = ld * (dyp(st.u, w, sg - 1.0) + 2.0 * e2 * sq(ux, w, sg - 1.0) + e2 * e2 * sq(vx, w, sg - 1.0));

    if (variant == EnergyVariant::Gwp) {
        const double gt = std::exp(theta * st.t);
        const double g2 = gt * gt;
        SpectralField htil = st.h;
        htil *= gt;
        SpectralField htil_t = st.ht;
        htil_t.axpy(theta, st.h);
        htil_t *= gt;
        auto X = [&](double idx) {
            return sq(htil_t, w, idx) + g2 * (e2 * sq(hx, w, idx) + dyp(st.h, w, idx));
        };
        const double Xs = X(sg);
        r.E_uv_gwp = g2 * (sq(st.u, w, s) + e2 * sq(st.v, w, s));
        r.E_h_gwp = Xs - (theta - theta * theta) * g2 * sq(st.h, w, s);
        r.E_h_gwp_floor = 0.5 * Xs;
        r.positivity = r.E_h_gwp - r.E_h_gwp_floor >= -1e-12 * Xs;
        r.CK_h_gwp = ld * X(sg + 0.25) + 2.0 * ld * dt_weighted_sq(htil, htil_t, w.with_s(sg + 0.25)) +
                     ld * ld * ld * g2 * sq(st.h, w, s);
        r.E_u_low_gwp = sq(st.u, w, s - 2.0) + sq(st.v, w, s - 2.0) + r.E_u_low;
        r.E_h_low_gwp = sq(st.ht, w, s - 1.0) + e2 * sq(hx, w, s - 1.0) + dyp(st.h, w, s - 1.0);
    }

    r.blowup = !finite_all({r.E_u, r.D_u, r.CK_u, r.E_h, r.D_h, r.CK_h, r.E_u_low, r.D_u_low, r.CK_u_low,
                            r.E_uv_gwp, r.E_h_gwp, r.CK_h_gwp, r.E_u_low_gwp, r.E_h_low_gwp});
    return r;
}

double heat_energy(const NSMState& st, const GevreyWeight& w)
{
    return dyp(st.u, w.at(st.t), w.s + 1.0);
}

double wave_energy(const NSMState& st, const GevreyWeight& w_in, bool hydrostatic)
{
    const GevreyWeight w = w_in.at(st.t);
    const PhysicalParams& P = st.params;
    const double e2 = hydrostatic ? 0.0 : P.eps * P.eps;
    const double idx = w.s + 1.0;
    double grad = dyp(st.h, w, idx);
    if (e2 > 0.0) grad += e2 * sq(ddx(st.h), w, idx);
    return 0.5 * P.beta * sq(st.ht, w, idx) + 0.5 * P.gamma * grad;
}

}  // namespace nsm
