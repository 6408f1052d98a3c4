// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/recovery.hpp"
#include "nsmlab/solver.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace nsm;

namespace {

NSMState hydro_state(int Nx, int Ny, double amp, std::uint64_t seed = 1)
{
    InitialDataSpec d;
    d.amplitude = amp;
    d.seed = seed;
    return init_data_gevrey(d, make_grid(Nx, Ny, 2 * kPi), make_params(0.5, 1, 1, true));
}

NSMState advance(const NSMState& s0, double dt, long n)
{
    SolverOptions o;
    o.mode = SolverMode::Hydrostatic;
    o.dt = dt;
    ImexIntegrator it(s0, o);
    for (long i = 0; i < n; ++i) it.step();
    return it.state();
}

}  // namespace

TEST_CASE("hydrostatic zero state stays zero")
{
    const NSMState z = hydro_state(16, 24, 0.0);
    const Tendencies t = rhs_hydrostatic(z);
    CHECK(t.du.max_abs() == 0.0);
    CHECK(t.dv.max_abs() == 0.0);
    CHECK(t.dht.max_abs() == 0.0);
    const NSMState z1 = step_hydrostatic(z, 1e-3);
    CHECK(z1.u.max_abs() == 0.0);
    CHECK(z1.h.max_abs() == 0.0);
}

TEST_CASE("hydrostatic u tendency: pressure is a constant plus the v integral")
{
    const Grid g = make_grid(16, 40, 2 * kPi);
    NSMState s = make_zero_state(g, make_params(0.5, 1, 1, true));
    s.u = nsmtest::single_mode(g, 1, [](double y) { return cplx(std::sin(2 * kPi * y), 0.5 * std::sin(4 * kPi * y)); });
    s.v = v_from_u(s.u).v;
    const Tendencies t = rhs_hydrostatic(s);
    const ExplicitTerms x = explicit_terms(s, SolverMode::Hydrostatic);
    const double dy = g.dy();
    for (int q : {1, 2}) {
        const int m = g.slot(q);
        const cplx ik(0, g.k(m));
        const Profile d2 = d2_profile(s.u.profile(m), dy);
        const Profile cv = cumtrapz(s.v.profile(m), dy);
        cplx ps(0), sum(0);
        double spread = 0.0;
        for (int j = 1; j < g.M() - 1; ++j) {
            const cplx pre = x.Nu(m, j) - s.params.alpha * s.u(m, j) + d2[j];
            const cplx c = t.du(m, j) - pre - ik * s.params.alpha * cv[j];
            if (j == 1) ps = c;
            spread = std::max(spread, std::abs(c - ps));
            sum += t.du(m, j);
        }
        CHECK(spread < 1e-12);
        CHECK(std::abs(sum) * dy < 1e-12);
    }
    CHECK(t.dv.max_abs() == 0.0);
}

TEST_CASE("printed +2uh switch changes Nu by 4 alpha u h")
{
    NSMState s = hydro_state(16, 24, 1e-1, 3);
    const ExplicitTerms a = explicit_terms(s, SolverMode::Hydrostatic);
    s.params.printed_plus_2uh = true;
    const ExplicitTerms b = explicit_terms(s, SolverMode::Hydrostatic);
    SpectralField want = dealiased_product(s.u, s.h);
    want *= 4.0 * s.params.alpha;
    SpectralField d = b.Nu - a.Nu;
    for (int m = 0; m < s.grid.Nx; ++m) want(m, 0) = want(m, s.grid.M() - 1) = 0.0;
    CHECK(nsmtest::max_diff(d, want) < 1e-15);
    CHECK(want.max_abs() > 0.0);
    // The full system ignores the switch.
    NSMState f = s;
    const ExplicitTerms c = explicit_terms(f, SolverMode::Full);
    f.params.printed_plus_2uh = false;
    CHECK(nsmtest::max_diff(c.Nu, explicit_terms(f, SolverMode::Full).Nu) == 0.0);
}

TEST_CASE("hydrostatic k = 0 heat with damping is second order in time")
{
    const Grid g = make_grid(8, 31, 2 * kPi);
    NSMState s0 = make_zero_state(g, make_params(0.5, 1, 1, true));
    s0.u = nsmtest::single_mode(g, 0, [](double y) { return cplx(std::sin(kPi * y), 0); });
    const double dy = g.dy(), T = 0.1;
    const double lam = std::pow(2.0 / dy * std::sin(kPi * dy / 2), 2) + s0.params.alpha;
    auto err = [&](double dt) {
        const NSMState s = advance(s0, dt, std::lround(T / dt));
        double e = 0.0;
        for (int j = 1; j < g.M() - 1; ++j) e = std::max(e, std::abs(s.u(0, j) - std::exp(-lam * T) * std::sin(kPi * g.y(j))));
        return e;
    };
    const double r = err(0.002) / err(0.001);
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
}

TEST_CASE("hydrostatic flux and top-wall constraints hold over 1000 steps")
{
    RunSpec spec;
    spec.solver.mode = SolverMode::Hydrostatic;
    spec.solver.dt = 1e-3;
    spec.T = 1.0;
    spec.stride = 100;
    spec.weight = GevreyWeight::fixed(1.0, 4.0);
    spec.energies = false;
    const RunResult r = run_hydrostatic(hydro_state(16, 32, 1e-2, 8), spec);
    CHECK(r.steps == 1000);
    CHECK_FALSE(r.blowup);
    CHECK(r.worst.flux_u <= 1e-8);
    CHECK(r.worst.top_v <= 1e-8);
    CHECK(r.worst.ok(1e-9));
}

TEST_CASE("hydrostatic system converges at second order in dt")
{
    const NSMState s0 = hydro_state(16, 32, 5e-2, 11);
    const double T = 0.1;
    const NSMState a = advance(s0, 0.004, 25), b = advance(s0, 0.002, 50), c = advance(s0, 0.001, 100);
    const double d1 = nsmtest::max_diff(a.u, b.u) + nsmtest::max_diff(a.h, b.h);
    const double d2 = nsmtest::max_diff(b.u, c.u) + nsmtest::max_diff(b.h, c.h);
    CHECK(c.t == doctest::Approx(T));
    const double r = d1 / d2;
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
}
