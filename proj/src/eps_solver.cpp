// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/solver.hpp"

#include <algorithm>
#include <cmath>

namespace nsm {

namespace {

bool finite_field(const SpectralField& f)
{
    for (const auto& z : f.data())
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

void merge(InvariantReport& w, const InvariantReport& r)
{
    w.div_u = std::max(w.div_u, r.div_u);
    w.div_e = std::max(w.div_e, r.div_e);
    w.curl_ht = std::max(w.curl_ht, r.curl_ht);
    w.flux_u = std::max(w.flux_u, r.flux_u);
    w.top_v = std::max(w.top_v, r.top_v);
    w.wall_u = std::max(w.wall_u, r.wall_u);
    w.wall_h = std::max(w.wall_h, r.wall_h);
    w.symmetry = std::max(w.symmetry, r.symmetry);
}

}  // namespace

RunResult run_simulation(const NSMState& s0, const RunSpec& spec, const StepObserver& obs)
{
    if (!(spec.T >= 0.0)) fail(ErrorCode::InvalidArgument, "time.T must be nonnegative");
    if (spec.stride < 1) fail(ErrorCode::InvalidArgument, "time.stride must be at least 1");
    ImexIntegrator it(s0, spec.solver);
    const double dt = spec.solver.dt;
    const long nsteps = static_cast<long>(std::llround(spec.T / dt));
    const bool hydro = spec.solver.mode == SolverMode::Hydrostatic;
    const bool track_linear = spec.solver.mode == SolverMode::Linear;
    const GevreyWeight fixed = GevreyWeight::fixed(0.5 * spec.weight.delta0, spec.weight.s);

    RunResult res;
    auto record = [&](const NSMState& s, const InvariantReport& inv) {
        TrajectoryRecord r;
        r.t = s.t;
        r.inv = inv;
        r.norm_u = gevrey_norm(s.u, fixed);
        r.norm_h = gevrey_norm(s.h, fixed);
        const double dh = gevrey_norm_dyplus(s.h, fixed);
        r.decay_quantity = r.norm_u * r.norm_u + dh * dh;
        r.heat = heat_energy(s, spec.weight);
        r.wave = wave_energy(s, spec.weight, hydro);
        if (spec.energies) {
            r.energy = compute_energies(s, spec.weight, spec.variant, spec.theta);
            if (spec.variant == EnergyVariant::Gwp && !r.energy.positivity) res.positivity = false;
        }
        res.records.push_back(r);
    };

    InvariantReport inv0 = check_invariants(it.state());
    merge(res.worst, inv0);
    record(it.state(), inv0);
    double heat_prev = heat_energy(it.state(), spec.weight);
    double wave_prev = wave_energy(it.state(), spec.weight, hydro);
    const double heat0 = std::max(heat_prev, 1e-300);
    const double wave0 = std::max(wave_prev, 1e-300);

    NSMState last_valid = it.state();
    for (long n = 0; n < nsteps; ++n) {
        it.step();
        const NSMState& s = it.state();
        const bool finite = finite_field(s.u) && finite_field(s.h) && finite_field(s.ht);
        const double nu = finite ? gevrey_norm(s.u, fixed) : INFINITY;
        const double nh = finite ? gevrey_norm(s.h, fixed) : INFINITY;
        if (!finite || !(nu <= spec.blowup_threshold) || !(nh <= spec.blowup_threshold)) {
            res.blowup = true;
            res.status = "blowup";
            break;
        }
        const InvariantReport inv = check_invariants(s);
        merge(res.worst, inv);
        if (track_linear) {
            const double hq = heat_energy(s, spec.weight);
            const double wq = wave_energy(s, spec.weight, hydro);
            res.max_heat_increase = std::max(res.max_heat_increase, (hq - heat_prev) / heat0);
            res.max_wave_increase = std::max(res.max_wave_increase, (wq - wave_prev) / wave0);
            heat_prev = hq;
            wave_prev = wq;
        }
        if (lambda_schedule(spec.weight.schedule, s.t).horizon_exceeded) res.horizon_exceeded = true;
        if (obs) obs(s);
        last_valid = s;
        if ((n + 1) % spec.stride == 0 || n + 1 == nsteps) record(s, inv);
    }
    res.steps = it.steps();
    res.final_state = res.blowup ? last_valid : it.state();
    if (!res.blowup && res.horizon_exceeded) res.status = "horizon-exceeded";
    return res;
}

RunResult run_linear(const NSMState& s0, const RunSpec& spec)
{
    RunSpec sp = spec;
    sp.solver.mode = SolverMode::Linear;
    return run_simulation(s0, sp);
}

RunResult run_full(const NSMState& s0, const RunSpec& spec)
{
    RunSpec sp = spec;
    sp.solver.mode = SolverMode::Full;
    return run_simulation(s0, sp);
}

}  // namespace nsm
