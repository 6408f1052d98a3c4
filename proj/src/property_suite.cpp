// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/diagnostics.hpp"
#include "nsmlab/error.hpp"
#include "nsmlab/recovery.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

namespace nsm {

namespace {

double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

double sq(const SpectralField& f, const GevreyWeight& w)
{
    const double n = gevrey_norm(f, w);
    return n * n;
}

double sq_dy(const SpectralField& f, const GevreyWeight& w)
{
    const double n = gevrey_norm_dyplus(f, w);
    return n * n;
}

/// Random real field with modes |k| <= kmax, sine-series profiles that do not
/// depend on the resolution.
SpectralField random_field(const Grid& g, int kmax, std::mt19937_64& rng, double radius, bool dirichlet)
{
    SpectralField f(g);
    const int M = g.M();
    for (int q = 0; q <= kmax; ++q) {
        const int m = g.slot(q);
        if (m < 0 || m == g.nyquist_slot()) continue;
        const double env = std::exp(-radius * std::sqrt(japanese(q)));
        double a[4], b[4];
        for (int n = 0; n < 4; ++n) {
            a[n] = 2.0 * unit(rng) - 1.0;
            b[n] = q == 0 ? 0.0 : 2.0 * unit(rng) - 1.0;
        }
        const double c0 = dirichlet ? 0.0 : 2.0 * unit(rng) - 1.0;
        for (int j = 0; j < M; ++j) {
            const double y = g.y(j);
            cplx z = c0;
            for (int n = 0; n < 4; ++n) z += cplx(a[n], b[n]) * std::sin((n + 1) * kPi * y) / double(n + 1);
            f(m, j) = env * z;
        }
        if (q > 0) {
            const int mm = g.slot(-q);
            for (int j = 0; j < M; ++j) f(mm, j) = std::conj(f(m, j));
        }
    }
    return f;
}

double stability(double a, double b) { return b > 0.0 ? std::abs(a / b - 1.0) : INFINITY; }

}  // namespace

RecoveryRatios recovery_ratios(const Grid& g, int samples, std::uint64_t seed, double s, double radius)
{
    if (samples < 1) fail(ErrorCode::InvalidArgument, "recovery_ratios: samples must be positive");
    std::mt19937_64 rng(seed);
    const GevreyWeight ws = GevreyWeight::fixed(radius, s);
    const GevreyWeight ws1 = GevreyWeight::fixed(radius, s - 1.0);
    RecoveryRatios r;
    r.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const SpectralField om = random_field(g, g.dealias_cutoff(), rng, radius, true);
        const DivFreePair p = recover_div_free_from_curl(om);
        const double lo = std::sqrt(sq(p.first, ws) + sq(p.second, ws)) / gevrey_norm(om, ws1);
        const double gr = std::sqrt(sq_dy(p.first, ws) + sq_dy(p.second, ws)) / gevrey_norm(om, ws);
        r.K_low = std::max(r.K_low, lo);
        r.K_grad = std::max(r.K_grad, gr);
        r.round_trip = std::max(r.round_trip, pair_curl_defect(p, om));
    }
    return r;
}

double recovery_manufactured_order(int Ny_coarse)
{
    if (Ny_coarse < 4) fail(ErrorCode::InvalidArgument, "recovery_manufactured_order: Ny too small");
    auto err = [](int Ny) {
        const Grid g = make_grid(8, Ny, 2.0 * kPi);
        SpectralField om(g);
        const int m = g.slot(1), mm = g.slot(-1);
        for (int j = 0; j < g.M(); ++j) {
            om(m, j) = -(1.0 + kPi * kPi) * std::sin(kPi * g.y(j));
            om(mm, j) = std::conj(om(m, j));
        }
        const DivFreePair p = recover_div_free_from_curl(om);
        double e = 0.0;
        for (int j = 0; j < g.M(); ++j) {
            const double y = g.y(j);
            e = std::max(e, std::abs(p.first(m, j) - kPi * std::cos(kPi * y)));
            e = std::max(e, std::abs(p.second(m, j) - cplx(0.0, -1.0) * std::sin(kPi * y)));
        }
        return e;
    };
    const double ec = err(Ny_coarse);
    const double ef = err(2 * Ny_coarse + 1);
    return std::log2(ec / ef);
}

PropertySuiteReport run_property_suite(const PropertySuiteConfig& cfg)
{
    if (cfg.commutator_samples < 1 || cfg.product_pairs < 2 || cfg.recovery_samples < 1)
        fail(ErrorCode::InvalidArgument, "property-suite: sample counts must be positive");
    const auto t0 = std::chrono::steady_clock::now();
    PropertySuiteReport rep;

    rep.commutator = check_commutator_bounds(make_commutator_samples(cfg.commutator_samples, cfg.seed));
    rep.commutator_doubled =
        check_commutator_bounds(make_commutator_samples(2 * cfg.commutator_samples, cfg.seed + 1));
    rep.commutator_ok = rep.commutator.all_finite && rep.commutator_doubled.all_finite;
    for (int i = 0; i < 3; ++i) {
        rep.commutator_stability[i] =
            stability(rep.commutator.max_ratio[i], rep.commutator_doubled.max_ratio[i]);
        if (!(rep.commutator_stability[i] <= 0.1)) rep.commutator_ok = false;
    }

    std::mt19937_64 rng(cfg.seed);
    for (long i = 0; i < cfg.commutator_samples; ++i) {
        const double s = 1.0 + 11.0 * unit(rng);
        const double d = unit(rng);
        const double xi = (2.0 * unit(rng) - 1.0) * 4096.0;
        const double eta = (2.0 * unit(rng) - 1.0) * 4096.0;
        const double r = submultiplicative_ratio(xi, eta, s, d);
        rep.submultiplicative_max = std::isfinite(r) ? std::max(rep.submultiplicative_max, r) : INFINITY;
    }

    const Grid pg = make_grid(32, 16, 2.0 * kPi);
    const GevreyWeight pw = GevreyWeight::fixed(0.5, 2.0);
    bool pfinite = true;
    for (long i = 0; i < cfg.product_pairs; ++i) {
        const SpectralField f = random_field(pg, pg.Nx / 6, rng, 0.5, false);
        const SpectralField g = random_field(pg, pg.Nx / 6, rng, 0.5, false);
        const ProductLawReport pr = check_product_law(f, g, pw, 1.0);
        for (int q = 0; q < 2; ++q) {
            if (!std::isfinite(pr.K[q])) pfinite = false;
            rep.product_K[q] = std::max(rep.product_K[q], pr.K[q]);
            if (i < cfg.product_pairs / 2) rep.product_K_half[q] = rep.product_K[q];
        }
    }
    rep.product_ok = pfinite && stability(rep.product_K[0], rep.product_K_half[0]) <= 0.1 &&
                     stability(rep.product_K[1], rep.product_K_half[1]) <= 0.1;

    rep.recovery_coarse = recovery_ratios(make_grid(16, 32, 2.0 * kPi), cfg.recovery_samples, cfg.seed, 3.0, 0.5);
    rep.recovery_fine = recovery_ratios(make_grid(16, 65, 2.0 * kPi), cfg.recovery_samples, cfg.seed, 3.0, 0.5);
    rep.recovery_order = recovery_manufactured_order(32);
    rep.recovery_ok = std::isfinite(rep.recovery_coarse.K_low) && std::isfinite(rep.recovery_coarse.K_grad) &&
                      stability(rep.recovery_fine.K_low, rep.recovery_coarse.K_low) <= 0.1 &&
                      stability(rep.recovery_fine.K_grad, rep.recovery_coarse.K_grad) <= 0.1 &&
                      std::abs(rep.recovery_order - 2.0) <= 0.3;

    rep.ok = rep.commutator_ok && std::isfinite(rep.submultiplicative_max) && rep.product_ok && rep.recovery_ok;
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace nsm
