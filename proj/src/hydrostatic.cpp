// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/recovery.hpp"
#include "nsmlab/solver.hpp"

namespace nsm {

Tendencies rhs_hydrostatic(const NSMState& s)
{
    const Grid& g = s.grid;
    const PhysicalParams& P = s.params;
    const int M = g.M();
    const double dy = g.dy();
    const ExplicitTerms x = explicit_terms(s, SolverMode::Hydrostatic);

    SpectralField pre = x.Nu;
    pre.axpy(-P.alpha, s.u);
    for (int m = 0; m < g.Nx; ++m) {
        const Profile d2 = d2_profile(s.u.profile(m), dy);
        for (int j = 1; j < M - 1; ++j) pre(m, j) += d2[j];
    }
    const SpectralField p = hydrostatic_pressure(s.e, s.f, s.v, s.h, P.alpha, &pre);

    Tendencies r;
    r.du = pre;
    for (int m = 0; m < g.Nx; ++m) {
        const cplx ik(0.0, g.k(m));
        for (int j = 1; j < M - 1; ++j) r.du(m, j) -= ik * p(m, j);
    }
    r.dv = SpectralField(g);
    r.dh = s.ht;
    r.dht = x.Nh;
    r.dht *= 1.0 / P.beta;
    return r;
}

NSMState step_hydrostatic(const NSMState& s, double dt)
{
    SolverOptions o;
    o.mode = SolverMode::Hydrostatic;
    o.dt = dt;
    ImexIntegrator it(s, o);
    it.step();
    return it.state();
}

RunResult run_hydrostatic(const NSMState& s0, const RunSpec& spec)
{
    RunSpec sp = spec;
    sp.solver.mode = SolverMode::Hydrostatic;
    return run_simulation(s0, sp);
}

}  // namespace nsm
