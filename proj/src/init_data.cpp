// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/gevrey.hpp"
#include "nsmlab/recovery.hpp"
#include "nsmlab/state.hpp"

#include <cmath>
#include <random>

namespace nsm {

namespace {

double unit(std::mt19937_64& g)
{
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Random Dirichlet profile of unit scale. With zero_mean the trapezoid
/// integral vanishes exactly on the grid.
Profile random_profile(std::mt19937_64& rng, const Grid& g, ProfileFamily fam, bool zero_mean)
{
    const int M = g.M();
    const double dy = g.dy();
    Profile p(M);
    if (fam == ProfileFamily::SineSeries) {
        const double a1 = 2.0 * unit(rng) - 1.0;
        const double a2 = 2.0 * unit(rng) - 1.0;
        const double a3 = 2.0 * unit(rng) - 1.0;
        for (int j = 0; j < M; ++j) {
            const double y = g.y(j);
            p[j] = a1 * std::sin(kPi * y) + a2 * std::sin(2.0 * kPi * y) + a3 * std::sin(3.0 * kPi * y);
        }
    } else {
        const double c = 0.3 + 0.4 * unit(rng);
        for (int j = 0; j < M; ++j) {
            const double y = g.y(j);
            p[j] = y * (1.0 - y) * std::exp(-8.0 * (y - c) * (y - c)) * 4.0;
        }
    }
    p[0] = p[M - 1] = 0.0;
    if (zero_mean) {
        // Remove the trapezoid mean along sin(pi y).
        Profile b(M);
        for (int j = 0; j < M; ++j) b[j] = std::sin(kPi * g.y(j));
        b[0] = b[M - 1] = 0.0;
        const cplx r = trapz(p, dy) / trapz(b, dy);
        for (int j = 0; j < M; ++j) p[j] -= r * b[j];
    }
    return p;
}

void fill(SpectralField& fld, std::mt19937_64& rng, const InitialDataSpec& spec, int kmax, bool zero_mean,
          bool include_mean_mode)
{
    const Grid& g = fld.grid();
    const int M = g.M();
    for (int q = 0; q <= kmax; ++q) {
        if (q == 0 && !include_mean_mode) continue;
        const int m = g.slot(q);
        if (m < 0 || m == g.nyquist_slot()) continue;
        const double k = g.k(m);
        const double env = spec.amplitude * std::exp(-spec.delta0 * std::sqrt(japanese(k)));
        const double phase = 2.0 * kPi * unit(rng);
        const cplx r = q == 0 ? cplx(1.0) : std::polar(1.0, phase);
        Profile p = random_profile(rng, g, spec.family, zero_mean && q != 0);
        for (int j = 0; j < M; ++j) fld(m, j) = env * r * p[j];
        if (q > 0) {
            const int mm = g.Nx - m;
            for (int j = 0; j < M; ++j) fld(mm, j) = std::conj(fld(m, j));
        }
    }
}

}  // namespace

NSMState init_data_gevrey(const InitialDataSpec& spec, const Grid& g, const PhysicalParams& params)
{
    if (!(spec.delta0 > 0.0)) fail(ErrorCode::InvalidArgument, "data.delta0 must be positive");
    if (spec.s < 0.0) fail(ErrorCode::InvalidArgument, "data.s must be nonnegative");
    NSMState st = make_zero_state(g, params);
    const int cut = g.dealias_cutoff();
    const int kmax = spec.kmax > 0 ? std::min(spec.kmax, cut) : cut;
    if (spec.amplitude == 0.0) return st;

    std::mt19937_64 rng(spec.seed);
    fill(st.u, rng, spec, kmax, true, true);
    SpectralField omega(g, true, BoundaryCondition::Dirichlet0);
    fill(omega, rng, spec, kmax, false, true);
    fill(st.h, rng, spec, kmax, false, true);

    st.v = v_from_u(st.u).v;
    const DivFreePair pr = recover_div_free_from_curl(omega);
    st.e = pr.first;
    st.f = pr.second;
    st.F = pr.potential;
    st.ht = curl_of_potential(st.F);
    st.ht.set_bc(BoundaryCondition::Dirichlet0);
    return st;
}

}  // namespace nsm
