// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/diagnostics.hpp"
#include "nsmlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace nsm {

namespace {

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

}  // namespace

ConvergenceResult convergence_study(const ConvergenceConfig& cfg)
{
    if (cfg.eps_list.size() < 4) fail(ErrorCode::InvalidArgument, "convergence.eps_list needs at least 4 values");
    for (double e : cfg.eps_list)
        if (!(e > 0.0)) fail(ErrorCode::InvalidArgument, "convergence.eps_list values must be positive");
    if (!(cfg.dt > 0.0) || !(cfg.T > 0.0)) fail(ErrorCode::InvalidArgument, "convergence: T and dt must be positive");
    if (cfg.stride < 1) fail(ErrorCode::InvalidArgument, "convergence.stride must be at least 1");

    InitialDataSpec data = cfg.data;
    data.delta0 = cfg.delta0;
    data.s = cfg.s;
    const double r = 0.5 * cfg.delta0;
    const GevreyWeight wu = GevreyWeight::fixed(r, cfg.s - 4.0);
    const GevreyWeight wdy = GevreyWeight::fixed(r, cfg.s - 4.0 - 0.75);
    const GevreyWeight wh = GevreyWeight::fixed(r, cfg.s - 4.0 - 0.25);
    const long nsteps = static_cast<long>(std::llround(cfg.T / cfg.dt));

    ConvergenceResult res;
    for (double eps : cfg.eps_list) {
        const PhysicalParams P = make_params(eps, cfg.mu, cfg.mu0, cfg.normalized);
        const NSMState s0 = init_data_gevrey(data, cfg.grid, P);
        SolverOptions oe;
        oe.mode = SolverMode::Full;
        oe.dt = cfg.dt;
        SolverOptions oh = oe;
        oh.mode = SolverMode::Hydrostatic;
        ImexIntegrator ie(s0, oe), ih(s0, oh);
        double E = 0.0;
        for (long n = 1; n <= nsteps; ++n) {
            ie.step();
            ih.step();
            const NSMState& a = ie.state();
            const InvariantReport inv = check_invariants(a);
            res.worst_div = std::max(res.worst_div, inv.div_u);
            res.worst_curl = std::max(res.worst_curl, inv.curl_ht);
            res.worst_div_e = std::max(res.worst_div_e, inv.div_e);
            if (n % cfg.stride != 0 && n != nsteps) continue;
            const NSMState& b = ih.state();
            const SpectralField du = a.u - b.u;
            const SpectralField dh = a.h - b.h;
            const double q = sq(du, wu) + sq_dy(dh, wdy) + sq(dh, wh);
            if (!std::isfinite(q)) fail(ErrorCode::StudyFailed, "convergence: non-finite difference");
            E = std::max(E, q);
        }
        res.eps.push_back(eps);
        res.E.push_back(E);
    }
    res.fit = fit_loglog(res.eps, res.E);
    // eps_list is ordered by decreasing eps; E must decrease with it.
    res.monotone = true;
    for (std::size_t i = 1; i < res.E.size(); ++i) {
        const bool smaller_eps = res.eps[i] < res.eps[i - 1];
        if (smaller_eps ? !(res.E[i] < res.E[i - 1]) : !(res.E[i] > res.E[i - 1])) res.monotone = false;
    }
    return res;
}

DecayResult decay_study(const DecayConfig& cfg)
{
    if (!(cfg.T > 0.0) || !(cfg.dt > 0.0)) fail(ErrorCode::InvalidArgument, "decay: T and dt must be positive");
    if (!(cfg.theta > 0.0) || cfg.theta >= kPi / 10.0)
        fail(ErrorCode::InvalidArgument, "decay.theta must lie in (0, pi/10)");
    const PhysicalParams P = make_params(cfg.eps, 1.0, 1.0, true);
    InitialDataSpec data = cfg.data;
    data.delta0 = cfg.delta0;
    data.s = cfg.s;
    NSMState s0 = init_data_gevrey(data, cfg.grid, P);
    if (cfg.linear_only) {
        // Pure heat problem for u.
        s0.h.zero();
        s0.ht.zero();
        s0.e.zero();
        s0.f.zero();
        s0.F.zero();
    }

    RunSpec spec;
    spec.solver.mode = cfg.linear_only ? SolverMode::Linear : SolverMode::Full;
    spec.solver.dt = cfg.dt;
    spec.T = cfg.T;
    spec.stride = cfg.stride;
    spec.weight.delta0 = cfg.delta0;
    spec.weight.s = cfg.s;
    spec.weight.schedule.kind = ScheduleKind::GwpDecaying;
    spec.weight.schedule.theta = cfg.theta;
    spec.weight.schedule.delta0 = cfg.delta0;
    spec.variant = EnergyVariant::Gwp;
    spec.theta = cfg.theta;
    const RunResult run = run_simulation(s0, spec);

    DecayResult res;
    res.blowup = run.blowup;
    res.positivity = run.positivity;
    res.worst = run.worst;
    res.target = 0.5 * cfg.theta;
    res.t_transient = std::max(5.0, 0.1 * cfg.T);
    std::vector<double> ft, fq;
    for (const auto& r : run.records) {
        res.t.push_back(r.t);
        res.q.push_back(r.decay_quantity);
        if (r.t >= res.t_transient && r.decay_quantity > 0.0 && std::isfinite(r.decay_quantity)) {
            ft.push_back(r.t);
            fq.push_back(std::log(r.decay_quantity));
        }
    }
    if (ft.size() < 4 || run.blowup) {
        res.degenerate = true;
        return res;
    }
    res.fit = fit_line(ft, fq);
    res.exponent = -res.fit.slope;
    return res;
}

}  // namespace nsm
