// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/recovery.hpp"
#include "nsmlab/solver.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace nsm;

namespace {

NSMState small_state(int Nx, int Ny, double amp, std::uint64_t seed = 1, double eps = 0.5)
{
    InitialDataSpec d;
    d.amplitude = amp;
    d.seed = seed;
    return init_data_gevrey(d, make_grid(Nx, Ny, 2 * kPi), make_params(eps, 1, 1, true));
}

/// Linear alpha pieces of the full tendencies.
void subtract_linear(Tendencies& t, const NSMState& s)
{
    const PhysicalParams& P = s.params;
    t.du.axpy(-P.alpha, s.f);
    t.du.axpy(P.alpha, s.u);
    t.dv.axpy(P.alpha / (P.eps * P.eps), s.e);
    t.dv.axpy(P.alpha / (P.eps * P.eps), s.v);
    for (int m = 0; m < s.grid.Nx; ++m) t.du(m, 0) = t.du(m, s.grid.M() - 1) = 0.0;
}

NSMState scaled(const NSMState& s, double a)
{
    NSMState o = s;
    for (SpectralField* f : {&o.u, &o.v, &o.h, &o.ht, &o.e, &o.f, &o.p, &o.F}) *f *= a;
    return o;
}

double max_of(const Tendencies& t) { return std::max({t.du.max_abs(), t.dv.max_abs(), t.dht.max_abs()}); }

/// h = sin(pi y) at mode q, h_t = 0, everything else zero.
NSMState wave_mode(int Ny, int q, double eps)
{
    const Grid g = make_grid(8, Ny, 2 * kPi);
    NSMState s = make_zero_state(g, make_params(eps, 1, 1, true));
    s.h = nsmtest::single_mode(g, q, [](double y) { return cplx(std::sin(kPi * y), 0); });
    return s;
}

}  // namespace

TEST_CASE("physical parameters")
{
    const PhysicalParams p = make_params(0.1, 2.0, 3.0, false, 1.0);
    CHECK(p.alpha == doctest::Approx(0.02));
    CHECK(p.beta == doctest::Approx(1.0 / (4.0 * 3.0 * 0.02)));
    CHECK(p.gamma == doctest::Approx(1.0 / (3.0 * 0.02)));
    CHECK(p.m == doctest::Approx(10.0));
    const PhysicalParams n = make_params(0.3, 2.0, 3.0, true);
    CHECK(n.alpha == 1.0);
    CHECK(n.beta == 1.0);
    CHECK(n.gamma == 1.0);
    CHECK_THROWS_AS(make_params(0.0, 1, 1, false), Error);
    CHECK_THROWS_AS(make_params(1.5, 1, 1, false), Error);
}

TEST_CASE("initial data: zero amplitude, invariants and linearity")
{
    const NSMState z = small_state(16, 24, 0.0);
    for (const SpectralField* f : {&z.u, &z.v, &z.h, &z.ht, &z.e, &z.f}) CHECK(f->max_abs() == 0.0);

    const NSMState s = small_state(32, 48, 1e-3, 7);
    const InvariantReport inv = check_invariants(s);
    CHECK(inv.ok(1e-9));
    CHECK(inv.flux_u <= 1e-14);
    CHECK(inv.top_v <= 1e-14);
    CHECK(inv.symmetry <= 1e-15);

    GevreyWeight w = GevreyWeight::fixed(1.0, 10.5);
    double base = 0.0;
    for (double a : {1.0, 2.0, 4.0}) {
        const NSMState sa = small_state(32, 48, a, 7);
        const double n = gevrey_norm(ddy(sa.u, BoundaryCondition::Dirichlet0), w);
        CHECK(std::isfinite(n));
        if (a == 1.0) base = n;
        else CHECK(n / base == doctest::Approx(a).epsilon(1e-10));
    }
}

TEST_CASE("rhs_full: zero state, advection oracle, quadratic remainder")
{
    const NSMState z = small_state(16, 24, 0.0);
    CHECK(max_of(rhs_full(z)) == 0.0);

    // u in mode 1 only; h = e = f = 0.
    const Grid g = make_grid(16, 40, 2 * kPi);
    NSMState s = make_zero_state(g, make_params(0.5, 1, 1, true));
    s.u = nsmtest::single_mode(g, 1, [](double y) { return cplx(std::sin(2 * kPi * y), 0.3 * std::sin(4 * kPi * y)); });
    s.v = v_from_u(s.u).v;
    const Tendencies t = rhs_full(s);
    // -u u_x - v u_y by physical-space products at full resolution.
    const auto U = to_physical(s.u), UX = to_physical(ddx(s.u)), V = to_physical(s.v),
               UY = to_physical(ddy(s.u, BoundaryCondition::Dirichlet0));
    std::vector<cplx> adv(U.size());
    for (std::size_t i = 0; i < U.size(); ++i) adv[i] = -(U[i] * UX[i] + V[i] * UY[i]);
    SpectralField want = from_physical(g, adv, true);
    want.axpy(-s.params.alpha, s.u);
    double err = 0.0;
    for (int m = 0; m < g.Nx; ++m)
        for (int j = 1; j < g.M() - 1; ++j) err = std::max(err, std::abs(t.du(m, j) - want(m, j)));
    CHECK(err < 1e-14);

    const NSMState base = small_state(16, 24, 1.0, 3);
    Tendencies t1 = rhs_full(scaled(base, 1e-3)), t2 = rhs_full(scaled(base, 2e-3));
    subtract_linear(t1, scaled(base, 1e-3));
    subtract_linear(t2, scaled(base, 2e-3));
    const Tendencies l = rhs_linear(scaled(base, 1e-3));
    CHECK(l.du.max_abs() == 0.0);
    const double r1 = max_of(t1) / 1e-6, r2 = max_of(t2) / 4e-6;
    CHECK(std::isfinite(r1));
    CHECK(r2 / r1 == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("step_imex: zero state and invariants")
{
    const NSMState z = small_state(16, 24, 0.0);
    const NSMState z1 = step_imex(z, 1e-3);
    CHECK(z1.t == doctest::Approx(1e-3));
    CHECK(z1.u.max_abs() == 0.0);
    CHECK(z1.h.max_abs() == 0.0);

    SolverOptions o;
    o.dt = 2e-3;
    ImexIntegrator it(small_state(32, 48, 1e-2, 5, 0.2), o);
    for (int n = 0; n < 20; ++n) {
        it.step();
        const InvariantReport inv = check_invariants(it.state());
        CHECK(inv.ok(1e-9));
        CHECK(inv.top_v <= 1e-12);
    }
}

TEST_CASE("linear damped wave mode converges at second order")
{
    for (int q : {0, 1, 3}) {
        const double eps = 0.5, T = 1.0;
        const NSMState s0 = wave_mode(31, q, eps);
        const double dy = s0.grid.dy();
        const double lam = std::pow(2.0 / dy * std::sin(kPi * dy / 2), 2) + eps * eps * q * q;
        // mu^2 + mu + lam = 0, h(0) = 1, h'(0) = 0.
        const cplx disc = std::sqrt(cplx(1.0 - 4.0 * lam, 0));
        const cplx mp = 0.5 * (-1.0 + disc), mm = 0.5 * (-1.0 - disc);
        const cplx A = -mm / (mp - mm), B = mp / (mp - mm);
        const double exact = (A * std::exp(mp * T) + B * std::exp(mm * T)).real();
        auto err = [&](double dt) {
            SolverOptions o;
            o.mode = SolverMode::Linear;
            o.dt = dt;
            ImexIntegrator it(s0, o);
            const long n = std::lround(T / dt);
            for (long i = 0; i < n; ++i) it.step();
            double e = 0.0;
            for (int j = 1; j < s0.grid.M() - 1; ++j)
                e = std::max(e, std::abs(it.state().h(s0.grid.slot(q), j) - exact * std::sin(kPi * s0.grid.y(j))));
            return e;
        };
        const double r = err(0.02) / err(0.01);
        CHECK(r >= 3.5);
        CHECK(r <= 4.5);
    }
}

TEST_CASE("linear heat mode converges at second order")
{
    const Grid g = make_grid(8, 31, 2 * kPi);
    NSMState s0 = make_zero_state(g, make_params(0.5, 1, 1, true));
    s0.u = nsmtest::single_mode(g, 0, [](double y) { return cplx(std::sin(kPi * y), 0); });
    const double dy = g.dy(), T = 0.2;
    const double lam = std::pow(2.0 / dy * std::sin(kPi * dy / 2), 2);
    auto err = [&](double dt) {
        SolverOptions o;
        o.mode = SolverMode::Linear;
        o.dt = dt;
        ImexIntegrator it(s0, o);
        for (long i = 0; i < std::lround(T / dt); ++i) it.step();
        double e = 0.0;
        for (int j = 1; j < g.M() - 1; ++j) e = std::max(e, std::abs(it.state().u(0, j) - std::exp(-lam * T) * std::sin(kPi * g.y(j))));
        return e;
    };
    const double r = err(0.004) / err(0.002);
    CHECK(r >= 3.5);
    CHECK(r <= 4.5);
}

TEST_CASE("run_linear: energy laws and zero data")
{
    RunSpec spec;
    spec.solver.dt = 1e-3;
    spec.T = 0.2;
    spec.stride = 50;
    spec.weight.delta0 = 1.0;
    spec.weight.s = 10.0;
    spec.weight.schedule.kind = ScheduleKind::ConstantRate;
    spec.energies = false;
    const RunResult r = run_linear(small_state(16, 32, 1e-3, 4), spec);
    CHECK_FALSE(r.blowup);
    CHECK(r.max_heat_increase <= 1e-8);
    CHECK(r.max_wave_increase <= 1e-8);
    for (std::size_t i = 1; i < r.records.size(); ++i) CHECK(r.records[i].heat <= r.records[i - 1].heat);

    const RunResult r0 = run_linear(small_state(16, 32, 0.0), spec);
    for (const auto& rec : r0.records) {
        CHECK(rec.norm_u == 0.0);
        CHECK(rec.norm_h == 0.0);
    }
}

TEST_CASE("run_full: determinism, zero data, small-data run to the horizon")
{
    RunSpec spec;
    spec.solver.dt = 1e-3;
    spec.T = 0.015;
    spec.stride = 4;
    spec.weight.delta0 = 1.0;
    spec.weight.s = 10.0;
    spec.weight.schedule.kind = ScheduleKind::ConstantRate;
    const NSMState s0 = small_state(16, 32, 1e-3, 9, 0.3);
    const RunResult a = run_full(s0, spec), b = run_full(s0, spec);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].norm_u == b.records[i].norm_u);
        CHECK(a.records[i].energy.E_h == b.records[i].energy.E_h);
    }
    CHECK(a.final_state.u.data() == b.final_state.u.data());
    CHECK_FALSE(a.blowup);
    CHECK(a.status == "ok");
    CHECK(a.worst.ok(1e-9));
    for (const auto& rec : a.records) CHECK(std::isfinite(rec.energy.E_u + rec.energy.E_h));

    const RunResult z = run_full(small_state(16, 32, 0.0), spec);
    for (const auto& rec : z.records) CHECK(rec.norm_u + rec.norm_h == 0.0);

    RunSpec longer = spec;
    longer.T = 0.03;
    CHECK(run_full(s0, longer).horizon_exceeded);
}

TEST_CASE("blow-up keeps the last valid state")
{
    RunSpec spec;
    spec.solver.dt = 1e-3;
    spec.solver.check_cfl = false;
    spec.T = 0.05;
    spec.weight = GevreyWeight::fixed(1.0, 10.0);
    spec.energies = false;
    const NSMState s0 = small_state(16, 24, 1e-3);
    spec.blowup_threshold = 0.5 * gevrey_norm(s0.u, GevreyWeight::fixed(0.5, 10.0));
    const RunResult r = run_full(s0, spec);
    CHECK(r.blowup);
    CHECK(r.status == "blowup");
    CHECK(r.final_state.t == 0.0);
}

TEST_CASE("CFL violation is reported")
{
    SolverOptions o;
    o.dt = 10.0;
    ImexIntegrator it(small_state(16, 24, 1.0), o);
    try {
        it.step();
        FAIL("expected a CFL error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Cfl);
    }
}

TEST_CASE("mirror symmetry in x is preserved")
{
    NSMState s = small_state(16, 32, 1e-2, 12, 0.4);
    const Grid& g = s.grid;
    // u, f odd in x; v, e, h, h_t even.
    for (int m = 0; m < g.Nx; ++m)
        for (int j = 0; j < g.M(); ++j) {
            s.u(m, j) = cplx(0, s.u(m, j).imag());
            s.F(m, j) = s.F(m, j).real();
        }
    s.h = nsmtest::single_mode(g, 2, [](double y) { return cplx(1e-2 * std::sin(kPi * y), 0); });
    s.v = v_from_u(s.u).v;
    const DivFreePair pr = pair_from_potential(s.F);
    s.e = pr.first;
    s.f = pr.second;
    s.ht = curl_of_potential(s.F);
    SolverOptions o;
    o.dt = 2e-3;
    ImexIntegrator it(s, o);
    for (int n = 0; n < 50; ++n) it.step();
    const NSMState& e = it.state();
    double odd = 0.0, even = 0.0;
    for (int m = 0; m < g.Nx; ++m)
        for (int j = 0; j < g.M(); ++j) {
            odd = std::max({odd, std::abs(e.u(m, j).real()), std::abs(e.f(m, j).real())});
            even = std::max({even, std::abs(e.h(m, j).imag()), std::abs(e.v(m, j).imag()), std::abs(e.e(m, j).imag())});
        }
    CHECK(odd <= 1e-10 * e.u.max_abs());
    CHECK(even <= 1e-10 * e.h.max_abs());
}

TEST_CASE("refinement stability in y stands in for uniqueness")
{
    auto final_norm = [](int Ny) {
        InitialDataSpec d;
        d.amplitude = 1e-2;
        d.kmax = 3;
        const NSMState s0 = init_data_gevrey(d, make_grid(16, Ny, 2 * kPi), make_params(0.3, 1, 1, true));
        SolverOptions o;
        o.dt = 1e-3;
        ImexIntegrator it(s0, o);
        for (int n = 0; n < 50; ++n) it.step();
        return gevrey_norm(it.state().u, GevreyWeight::fixed(0.5, 4.0));
    };
    const double a = final_norm(31), b = final_norm(63), c = final_norm(127);
    const double r = std::abs(a - b) / std::abs(b - c);
    CHECK(r > 3.0);
    CHECK(r < 5.0);
}
