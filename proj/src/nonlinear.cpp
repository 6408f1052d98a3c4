// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/solver.hpp"

namespace nsm {

ExplicitTerms explicit_terms(const NSMState& s, SolverMode mode)
{
    const Grid& g = s.grid;
    const PhysicalParams& P = s.params;
    ExplicitTerms t{SpectralField(g), SpectralField(g), SpectralField(g)};
    if (mode == SolverMode::Linear) return t;

    const SpectralField ux = ddx(s.u);
    const SpectralField uy = ddy(s.u, BoundaryCondition::Dirichlet0);
    const SpectralField hx = ddx(s.h);
    const SpectralField hy = ddy(s.h, BoundaryCondition::Dirichlet0);

    const SpectralField uh = dealiased_product(s.u, s.h);
    const SpectralField uhh = dealiased_product(uh, s.h);
    const SpectralField fh = dealiased_product(s.f, s.h);
    const double sgn = (mode == SolverMode::Hydrostatic && P.printed_plus_2uh) ? 2.0 : -2.0;

    t.Nu = dealiased_product(s.u, ux);
    t.Nu += dealiased_product(s.v, uy);
    t.Nu *= -1.0;
    SpectralField cu = s.f;
    cu += fh;
    cu -= uhh;
    cu.axpy(sgn, uh);
    t.Nu.axpy(P.alpha, cu);

    const SpectralField vh = dealiased_product(s.v, s.h);
    const SpectralField vhh = dealiased_product(vh, s.h);
    SpectralField cv = s.e;
    cv += dealiased_product(s.e, s.h);
    cv.axpy(2.0, vh);
    cv += vhh;
    t.Nv = cv;
    t.Nv *= -P.alpha;
    if (mode == SolverMode::Full) {
        const SpectralField vx = ddx(s.v);
        SpectralField adv = dealiased_product(s.u, vx);
        adv -= dealiased_product(s.v, ux);  // v_y = -u_x
        t.Nv.axpy(-P.eps * P.eps, adv);
    }

    t.Nh = dealiased_product(s.u, hx);
    t.Nh += dealiased_product(s.v, hy);
    t.Nh *= -1.0;

    // Walls carry no tendency for Dirichlet fields.
    const int M = g.M();
    for (int m = 0; m < g.Nx; ++m) {
        t.Nu(m, 0) = t.Nu(m, M - 1) = 0.0;
        t.Nh(m, 0) = t.Nh(m, M - 1) = 0.0;
    }
    return t;
}

Tendencies rhs_full(const NSMState& s)
{
    const ExplicitTerms x = explicit_terms(s, SolverMode::Full);
    const PhysicalParams& P = s.params;
    Tendencies r;
    r.du = x.Nu;
    r.du.axpy(-P.alpha, s.u);
    r.dv = x.Nv;
    r.dv.axpy(-P.alpha, s.v);
    r.dv *= 1.0 / (P.eps * P.eps);
    r.dh = s.ht;
    r.dht = x.Nh;
    r.dht *= 1.0 / P.beta;
    return r;
}

Tendencies rhs_linear(const NSMState& s)
{
    const Grid& g = s.grid;
    Tendencies r{SpectralField(g), SpectralField(g), s.ht, SpectralField(g)};
    return r;
}

}  // namespace nsm
