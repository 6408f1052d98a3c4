// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/diagnostics.hpp"
#include "nsmlab/error.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace nsm;

namespace {

NSMState dstate(double amp, std::uint64_t seed = 2)
{
    InitialDataSpec d;
    d.amplitude = amp;
    d.seed = seed;
    return init_data_gevrey(d, make_grid(16, 32, 2 * kPi), make_params(0.4, 1, 1, true));
}

NSMState times(NSMState s, double a)
{
    for (SpectralField* f : {&s.u, &s.v, &s.h, &s.ht, &s.e, &s.f, &s.p, &s.F}) *f *= a;
    return s;
}

GevreyWeight constant_weight(double s)
{
    GevreyWeight w;
    w.delta0 = 1.0;
    w.s = s;
    w.schedule.kind = ScheduleKind::ConstantRate;
    return w;
}

}  // namespace

TEST_CASE("energy functionals: zero state and quadratic homogeneity")
{
    const GevreyWeight w = constant_weight(6.0);
    const EnergyReport z = compute_energies(dstate(0.0), w, EnergyVariant::Lwp, 0.3);
    CHECK(z.E_u == 0.0);
    CHECK(z.D_u == 0.0);
    CHECK(z.E_h == 0.0);
    CHECK(z.CK_h == 0.0);
    CHECK(z.positivity);
    CHECK_FALSE(z.blowup);

    const NSMState s = dstate(1e-3);
    const EnergyReport a = compute_energies(s, w, EnergyVariant::Lwp, 0.3);
    const EnergyReport b = compute_energies(times(s, 2.0), w, EnergyVariant::Lwp, 0.3);
    CHECK(a.dlambda == doctest::Approx(32.0));
    for (auto [x, y] : {std::pair{a.E_u, b.E_u}, {a.D_u, b.D_u}, {a.E_h, b.E_h}, {a.D_h, b.D_h}, {a.CK_h, b.CK_h}}) {
        CHECK(x > 0.0);
        CHECK(y / x == doctest::Approx(4.0).epsilon(1e-10));
    }
    CHECK(heat_energy(times(s, 2.0), w) == doctest::Approx(4.0 * heat_energy(s, w)));
    CHECK(wave_energy(times(s, 2.0), w) == doctest::Approx(4.0 * wave_energy(s, w)));
    CHECK(wave_energy(s, w, true) <= wave_energy(s, w, false));
}

TEST_CASE("Poincare constant from the discrete Dirichlet eigenvalue")
{
    const PoincareTheta p = poincare_theta(256);
    CHECK(p.discrete_ratio == doctest::Approx(kPi).epsilon(2e-3));
    CHECK(p.theta == doctest::Approx(0.95 * kPi / 10));
    CHECK(p.theta < 0.5);
    CHECK(p.discrete_ratio >= 10 * p.theta);
    CHECK_THROWS_AS(poincare_theta(4), Error);
}

TEST_CASE("fit_line")
{
    const RateFit f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r2 == doctest::Approx(1.0));
    const RateFit g = fit_loglog({1, 2, 4, 8}, {3, 12, 48, 192});
    CHECK(g.slope == doctest::Approx(2.0));
    CHECK_THROWS_AS(fit_line({1}, {1}), Error);
    CHECK_THROWS_AS(fit_line({1, 1}, {1, 2}), Error);
    CHECK_THROWS_AS(fit_loglog({1, 2}, {1, -1}), Error);
}

TEST_CASE("time-derivative norm identity is second order in dt")
{
    std::mt19937_64 rng(5);
    const Grid g = make_grid(16, 32, 2 * kPi);
    const SpectralField phi0 = nsmtest::random_field(g, 4, rng);
    const double mu = -0.7;
    auto hist = [&](double t, double dt) {
        std::vector<SpectralField> h;
        for (int i = -1; i <= 1; ++i) h.push_back(std::exp(mu * (t + i * dt)) * phi0);
        return h;
    };
    GevreyWeight cw = constant_weight(3.0);
    GevreyWeight gw = cw;
    gw.schedule.kind = ScheduleKind::GwpDecaying;
    for (const GevreyWeight& w : {cw, gw}) {
        const double t = 0.01;
        const DtNormIdentity a = check_dtnorm_identity(hist(t, 1e-3), w, t, 1e-3);
        const DtNormIdentity b = check_dtnorm_identity(hist(t, 5e-4), w, t, 5e-4);
        CHECK(a.lhs > 0.0);
        CHECK(b.residual < a.residual);
        CHECK(a.residual / b.residual == doctest::Approx(4.0).epsilon(0.05));
    }
    // Without a schedule both sides vanish.
    GevreyWeight fw = GevreyWeight::fixed(1.0, 3.0);
    const DtNormIdentity s = check_dtnorm_identity(hist(0.01, 1e-3), fw, 0.01, 1e-3);
    CHECK(s.lhs == 0.0);
    CHECK(s.residual == 0.0);
    CHECK_THROWS_AS(check_dtnorm_identity(hist(0.01, 1e-3), cw, 0.0, 1e-3), Error);
}

TEST_CASE("recovery ratios are resolution-stable")
{
    const RecoveryRatios a = recovery_ratios(make_grid(16, 32, 2 * kPi), 20, 3, 3.0, 0.5);
    const RecoveryRatios b = recovery_ratios(make_grid(16, 65, 2 * kPi), 20, 3, 3.0, 0.5);
    CHECK(a.samples == 20);
    CHECK(a.round_trip < 1e-9);
    CHECK(b.K_low / a.K_low == doctest::Approx(1.0).epsilon(0.1));
    CHECK(b.K_grad / a.K_grad == doctest::Approx(1.0).epsilon(0.1));
    CHECK(recovery_manufactured_order(32) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("property suite with reduced sample counts")
{
    PropertySuiteConfig c;
    c.commutator_samples = 20000;
    c.product_pairs = 200;
    c.recovery_samples = 10;
    const PropertySuiteReport r = run_property_suite(c);
    CHECK(r.commutator_ok);
    CHECK(r.product_ok);
    CHECK(r.recovery_ok);
    CHECK(r.ok);
    for (double k : r.product_K) CHECK(k <= std::exp(0.5));
}

TEST_CASE("small eps-convergence study")
{
    ConvergenceConfig c;
    c.grid = make_grid(16, 32, 2 * kPi);
    c.data.kmax = 2;
    c.data.amplitude = 1e-3;
    const ConvergenceResult r = convergence_study(c);
    REQUIRE(r.E.size() == 4);
    CHECK(r.monotone);
    CHECK(r.fit.slope == doctest::Approx(4.0).epsilon(0.1));
    CHECK(r.worst_div < 1e-9);
    CHECK(r.worst_curl < 1e-9);
    ConvergenceConfig bad = c;
    bad.eps_list = {0.1, 0.05};
    CHECK_THROWS_AS(convergence_study(bad), Error);
}

TEST_CASE("decay study: linear rate and degenerate data")
{
    DecayConfig c;
    c.grid = make_grid(8, 32, 2 * kPi);
    c.linear_only = true;
    c.T = 40.0;
    const DecayResult r = decay_study(c);
    const double dy = 1.0 / 33.0;
    const double lam = std::pow(2.0 / dy * std::sin(kPi * dy / 2), 2);
    CHECK_FALSE(r.degenerate);
    CHECK(r.exponent == doctest::Approx(2.0 * lam).epsilon(0.01));
    CHECK(r.exponent >= r.target);

    DecayConfig z = c;
    z.data.amplitude = 0.0;
    z.T = 1.0;
    CHECK(decay_study(z).degenerate);
}
