// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/recovery.hpp"
#include "nsmlab/state.hpp"

#include <algorithm>
#include <cmath>

namespace nsm {

PhysicalParams make_params(double eps, double mu, double mu0, bool normalized, double c_light)
{
    PhysicalParams p;
    p.eps = eps;
    p.mu = mu;
    p.mu0 = mu0;
    p.c_light = c_light;
    p.normalized = normalized;
    if (normalized) {
        p.alpha = p.beta = p.gamma = 1.0;
    } else {
        p.alpha = mu * eps * eps;
        p.beta = 1.0 / (mu * mu * mu0 * p.alpha);
        p.gamma = 1.0 / (mu0 * p.alpha);
    }
    p.m = eps > 0.0 ? c_light / eps : 0.0;
    validate_params(p);
    return p;
}

void validate_params(const PhysicalParams& p)
{
    if (!(p.eps > 0.0 && p.eps <= 1.0)) fail(ErrorCode::InvalidArgument, "params.eps must lie in (0,1]");
    if (!(p.mu > 0.0) || !(p.mu0 > 0.0)) fail(ErrorCode::InvalidArgument, "params.mu and params.mu0 must be positive");
    if (!(p.alpha > 0.0 && p.beta > 0.0 && p.gamma > 0.0) || !std::isfinite(p.beta) || !std::isfinite(p.gamma))
        fail(ErrorCode::InvalidArgument, "alpha, beta, gamma must be positive and finite");
    if (p.normalized && (p.alpha != 1.0 || p.beta != 1.0 || p.gamma != 1.0))
        fail(ErrorCode::InvalidArgument, "normalized params require alpha = beta = gamma = 1");
}

NSMState make_zero_state(const Grid& g, const PhysicalParams& p)
{
    NSMState s;
    s.grid = g;
    s.params = p;
    s.u = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.v = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.h = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.ht = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.e = SpectralField(g, true, BoundaryCondition::Neumann0);
    s.f = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.p = SpectralField(g, true, BoundaryCondition::Neumann0);
    s.F = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.ut = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    s.vt = SpectralField(g, true, BoundaryCondition::Dirichlet0);
    return s;
}

InvariantReport check_invariants(const NSMState& s)
{
    const Grid& g = s.grid;
    const int M = g.M();
    const double dy = g.dy();
    InvariantReport r;

    double du = 0.0, su = 1e-300;
    for (int m = 0; m < g.Nx; ++m) {
        const double k = g.k(m);
        const auto d = box_divergence(k, s.u.mode(m), s.v.mode(m), M, dy);
        for (int j = 0; j + 1 < M; ++j) {
            du = std::max(du, std::abs(d[j]));
            su = std::max(su, std::abs(k * s.u(m, j)));
        }
        if (k != 0.0) {
            r.flux_u = std::max(r.flux_u, std::abs(trapz(s.u.mode(m), M, dy)));
            r.top_v = std::max(r.top_v, std::abs(s.v(m, M - 1)));
        }
        r.wall_u = std::max({r.wall_u, std::abs(s.u(m, 0)), std::abs(s.u(m, M - 1)),
                             std::abs(s.v(m, 0))});
        r.wall_h = std::max({r.wall_h, std::abs(s.h(m, 0)), std::abs(s.h(m, M - 1))});
    }
    r.div_u = du / su;

    const SpectralField ex = ddx(s.e);
    const SpectralField fy = ddy(s.f, BoundaryCondition::Dirichlet0);
    double de = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i) de = std::max(de, std::abs(ex.data()[i] + fy.data()[i]));
    r.div_e = de / std::max({ex.max_abs(), fy.max_abs(), 1e-300});

    const SpectralField w = curl_of_potential(s.F);
    double dc = 0.0;
    for (int m = 0; m < g.Nx; ++m)
        for (int j = 0; j < M; ++j) dc = std::max(dc, std::abs(w(m, j) - s.ht(m, j)));
    r.curl_ht = dc / std::max(s.ht.max_abs(), 1e-300);

    r.symmetry = std::max({s.u.symmetry_defect(), s.h.symmetry_defect(), s.ht.symmetry_defect()});
    return r;
}

}  // namespace nsm
