// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/gevrey.hpp"

#include "nsmlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace nsm {

LambdaState lambda_schedule(const LambdaSchedule& sch, double t)
{
    if (t < 0.0) fail(ErrorCode::InvalidArgument, "lambda_schedule: t must be nonnegative");
    LambdaState st;
    switch (sch.kind) {
    case ScheduleKind::None:
        break;
    case ScheduleKind::ConstantRate: {
        const double rate = 32.0 * sch.C * sch.C_in;
        st.lambda = rate * t;
        st.dlambda = rate;
        st.ddlambda = 0.0;
        break;
    }
    case ScheduleKind::GwpDecaying: {
        const double a = sch.theta / (3.0 * sch.delta0);
        const double e = std::exp(-a * t);
        st.dlambda = 16.0 * e;
        st.ddlambda = -16.0 * a * e;
        st.lambda = 48.0 * sch.delta0 / sch.theta * (-std::expm1(-a * t));
        break;
    }
    }
    st.horizon_exceeded = st.lambda > 0.5 * sch.delta0;
    return st;
}

double schedule_horizon(const LambdaSchedule& sch)
{
    switch (sch.kind) {
    case ScheduleKind::None:
        return std::numeric_limits<double>::infinity();
    case ScheduleKind::ConstantRate:
        return sch.delta0 / (64.0 * sch.C * sch.C_in);
    case ScheduleKind::GwpDecaying: {
        const double frac = sch.theta / 96.0;
        if (frac >= 1.0) return std::numeric_limits<double>::infinity();
        return -3.0 * sch.delta0 / sch.theta * std::log1p(-frac);
    }
    }
    return 0.0;
}

double log_gevrey_symbol(double xi, double radius, double s)
{
    const double jb = japanese(xi);
    return radius * std::sqrt(jb) + s * std::log(jb);
}

MultiplierValue gevrey_multiplier(double xi, const GevreyWeight& w)
{
    MultiplierValue mv;
    mv.log_value = log_gevrey_symbol(xi, w.radius(), w.s);
    if (mv.log_value > 700.0) {
        mv.overflow = true;
        mv.value = std::numeric_limits<double>::infinity();
    } else {
        mv.value = std::exp(mv.log_value);
    }
    return mv;
}

namespace {

SpectralField scale_modes(const SpectralField& f, const GevreyWeight& w, double sign, bool* overflow)
{
    const Grid& g = f.grid();
    SpectralField out(g, f.real(), f.bc());
    const double radius = w.radius();
    const int M = g.M();
    bool of = false;
    for (int m = 0; m < g.Nx; ++m) {
        const double lw = sign * log_gevrey_symbol(g.k(m), radius, w.s);
        const cplx* src = f.mode(m);
        cplx* dst = out.mode(m);
        for (int j = 0; j < M; ++j) {
            const double a = std::abs(src[j]);
            if (a == 0.0) continue;
            const double lv = lw + std::log(a);
            if (lv > std::log(kGevreyBlowup)) of = true;
            dst[j] = src[j] * std::exp(lw);
        }
    }
    if (overflow) *overflow = of;
    return out;
}

}  // namespace

SpectralField apply_As(const SpectralField& f, const GevreyWeight& w, bool* overflow)
{
    return scale_modes(f, w, 1.0, overflow);
}

SpectralField apply_As_inverse(const SpectralField& f, const GevreyWeight& w, bool* overflow)
{
    return scale_modes(f, w, -1.0, overflow);
}

std::vector<double> gevrey_mode_energy(const SpectralField& f, const GevreyWeight& w)
{
    const Grid& g = f.grid();
    const int M = g.M();
    const double dy = g.dy();
    const double radius = w.radius();
    std::vector<double> e(g.Nx, 0.0);
    for (int m = 0; m < g.Nx; ++m) {
        const cplx* p = f.mode(m);
        double s = 0.5 * (std::norm(p[0]) + std::norm(p[M - 1]));
        for (int j = 1; j < M - 1; ++j) s += std::norm(p[j]);
        if (s == 0.0) continue;
        e[m] = std::exp(2.0 * log_gevrey_symbol(g.k(m), radius, w.s)) * s * dy;
    }
    return e;
}

double gevrey_norm(const SpectralField& f, const GevreyWeight& w, NormKind p)
{
    const Grid& g = f.grid();
    const int M = g.M();
    const double radius = w.radius();
    std::vector<double> w2(g.Nx);
    for (int m = 0; m < g.Nx; ++m) w2[m] = std::exp(2.0 * log_gevrey_symbol(g.k(m), radius, w.s));
    if (p == NormKind::L2) {
        double total = 0.0;
        for (int m = 0; m < g.Nx; ++m) {
            const cplx* q = f.mode(m);
            double s = 0.5 * (std::norm(q[0]) + std::norm(q[M - 1]));
            for (int j = 1; j < M - 1; ++j) s += std::norm(q[j]);
            if (s != 0.0) total += w2[m] * s;
        }
        return std::sqrt(total * g.dy());
    }
    double mx = 0.0;
    for (int j = 0; j < M; ++j) {
        double s = 0.0;
        for (int m = 0; m < g.Nx; ++m) {
            const double a = std::norm(f(m, j));
            if (a != 0.0) s += w2[m] * a;
        }
        mx = std::max(mx, s);
    }
    return std::sqrt(mx);
}

double gevrey_norm_dyplus(const SpectralField& f, const GevreyWeight& w)
{
    const Grid& g = f.grid();
    const int M = g.M();
    const double radius = w.radius();
    double total = 0.0;
    for (int m = 0; m < g.Nx; ++m) {
        const cplx* q = f.mode(m);
        double s = 0.0;
        for (int j = 0; j + 1 < M; ++j) s += std::norm(q[j + 1] - q[j]);
        if (s != 0.0) total += std::exp(2.0 * log_gevrey_symbol(g.k(m), radius, w.s)) * s;
    }
    return std::sqrt(total / g.dy());
}

CommutatorRegime classify_commutator(const CommutatorSample& smp)
{
    const double z = std::abs(smp.xi - smp.eta);
    const double e = std::abs(smp.eta);
    if (z <= smp.c * e) return CommutatorRegime::Near;
    if (e <= smp.c * z) return CommutatorRegime::LowHigh;
    if (smp.c * e <= z && z <= e / smp.c) return CommutatorRegime::Comparable;
    return CommutatorRegime::None;
}

double commutator_ratio(const CommutatorSample& smp)
{
    const CommutatorRegime r = classify_commutator(smp);
    if (r == CommutatorRegime::None) return -1.0;
    const double d = smp.delta;
    const double s = smp.s;
    const double la = log_gevrey_symbol(smp.xi, d, s);
    const double lb = log_gevrey_symbol(smp.eta, d, s);
    const double gap = std::abs(la - lb);
    if (gap == 0.0) return 0.0;
    const double lhs = std::max(la, lb) + std::log(-std::expm1(-gap));
    const double zeta = smp.xi - smp.eta;
    double rhs = 0.0;
    switch (r) {
    case CommutatorRegime::Near:
        rhs = log_gevrey_symbol(smp.eta, d, s - 0.75) + log_gevrey_symbol(zeta, d, 1.0) +
              0.25 * std::log(japanese(smp.xi));
        break;
    case CommutatorRegime::LowHigh:
        rhs = log_gevrey_symbol(smp.eta, d, 0.0) + log_gevrey_symbol(zeta, d, s);
        break;
    case CommutatorRegime::Comparable:
        rhs = log_gevrey_symbol(smp.eta, d, s - 1.0) + log_gevrey_symbol(zeta, d, 1.0);
        break;
    case CommutatorRegime::None:
        break;
    }
    return std::exp(lhs - rhs);
}

CommutatorReport check_commutator_bounds(const std::vector<CommutatorSample>& samples)
{
    CommutatorReport rep;
    for (const auto& smp : samples) {
        const CommutatorRegime r = classify_commutator(smp);
        if (r == CommutatorRegime::None || !(smp.c > 0.0 && smp.c < 1.0) || smp.s < 1.0) {
            ++rep.skipped;
            continue;
        }
        const double q = commutator_ratio(smp);
        const int i = static_cast<int>(r);
        ++rep.count[i];
        if (!std::isfinite(q)) {
            rep.all_finite = false;
            continue;
        }
        rep.max_ratio[i] = std::max(rep.max_ratio[i], q);
    }
    return rep;
}

namespace {

double unit(std::mt19937_64& g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Endpoint-weighted draw on [lo, hi]: a quarter of the mass on each endpoint.
double edge_weighted(std::mt19937_64& g, double lo, double hi)
{
    const double u = unit(g);
    if (u < 0.25) return lo;
    if (u < 0.5) return hi;
    return lo + (hi - lo) * unit(g);
}

}  // namespace

std::vector<CommutatorSample> make_commutator_samples(long n, std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    static constexpr double kC[3] = {0.25, 0.5, 0.75};
    std::vector<CommutatorSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        CommutatorSample smp;
        const int regime = static_cast<int>(g() % 3);
        smp.c = kC[g() % 3];
        smp.s = edge_weighted(g, 1.0, 12.0);
        smp.delta = edge_weighted(g, 0.0, 1.0);
        const double eta_mag = std::exp(edge_weighted(g, 0.0, std::log(4096.0)));
        const double eta = (g() & 1u) ? eta_mag : -eta_mag;
        double zmag = 0.0;
        if (regime == 0) {
            zmag = smp.c * eta_mag * edge_weighted(g, 0.0, 1.0);
        } else if (regime == 1) {
            zmag = eta_mag / smp.c * std::exp(edge_weighted(g, 0.0, std::log(1e3)));
        } else {
            zmag = eta_mag * std::pow(smp.c, 1.0 - 2.0 * edge_weighted(g, 0.0, 1.0));
        }
        const double zeta = (g() & 1u) ? zmag : -zmag;
        smp.eta = eta;
        smp.xi = eta + zeta;
        out.push_back(smp);
    }
    return out;
}

double submultiplicative_ratio(double xi, double eta, double s, double delta)
{
    const double z = xi - eta;
    const double lhs = log_gevrey_symbol(xi, delta, s);
    const double a = s * std::log(japanese(eta));
    const double b = s * std::log(japanese(z));
    const double lsum = std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
    const double rhs = delta * std::sqrt(japanese(eta)) + delta * std::sqrt(japanese(z)) + lsum;
    return std::exp(lhs - rhs);
}

ProductLawReport check_product_law(const SpectralField& f, const SpectralField& g,
                                   const GevreyWeight& w, double mu)
{
    if (f.grid() != g.grid()) fail(ErrorCode::InvalidArgument, "check_product_law: grid mismatch");
    if (mu < 1.0 || mu > w.s) fail(ErrorCode::InvalidArgument, "check_product_law: mu must lie in [1, s]");
    ProductLawReport rep;
    const SpectralField fg = dealiased_product(f, g);
    rep.lhs = gevrey_norm(fg, w, NormKind::L2);
    const GevreyWeight wm = w.with_s(mu);
    const double f_s2 = gevrey_norm(f, w, NormKind::L2), f_si = gevrey_norm(f, w, NormKind::Linf);
    const double g_s2 = gevrey_norm(g, w, NormKind::L2), g_si = gevrey_norm(g, w, NormKind::Linf);
    const double f_m2 = gevrey_norm(f, wm, NormKind::L2), f_mi = gevrey_norm(f, wm, NormKind::Linf);
    const double g_m2 = gevrey_norm(g, wm, NormKind::L2), g_mi = gevrey_norm(g, wm, NormKind::Linf);
    rep.rhs[0] = f_s2 * g_mi + g_s2 * f_mi;
    rep.rhs[1] = f_si * g_m2 + g_si * f_m2;
    for (int i = 0; i < 2; ++i) rep.K[i] = rep.rhs[i] > 0.0 ? rep.lhs / rep.rhs[i] : 0.0;
    return rep;
}

}  // namespace nsm
