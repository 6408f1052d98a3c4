// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/energies.hpp"
#include "nsmlab/state.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nsm {

enum class SolverMode { Full, Hydrostatic, Linear };

struct SolverOptions {
    SolverMode mode = SolverMode::Full;
    double dt = 1e-3;
    /// Advective limit dt <= cfl * min(dx/max|u|, dy/max|v|).
    double cfl = 0.4;
    bool check_cfl = true;
};

/// Explicit (non-stiff) parts: advection and the nonlinear alpha-couplings.
struct ExplicitTerms {
    SpectralField Nu;  ///< -(u u_x + v u_y) + alpha (f + f h - u h^2 -/+ 2 u h)
    SpectralField Nv;  ///< -eps^2 (u v_x + v v_y) - alpha (e + e h + 2 v h + v h^2)
    SpectralField Nh;  ///< -(u h_x + v h_y)
};

ExplicitTerms explicit_terms(const NSMState& s, SolverMode mode);

/// Non-pressure, non-diffusive tendencies. du and dv carry the explicit terms
/// plus the linear damping -alpha u, -alpha v/eps^2 (treated implicitly by the
/// integrator); dh = h_t; dht = -(u h_x + v h_y)/beta.
struct Tendencies {
    SpectralField du, dv, dh, dht;
};

Tendencies rhs_full(const NSMState& s);
/// Tendencies of the decoupled linear system: dh = h_t, the rest zero.
Tendencies rhs_linear(const NSMState& s);
/// Full hydrostatic tendency: du includes d_yy u and -ik p with the flux closure.
Tendencies rhs_hydrostatic(const NSMState& s);

/// IMEX integrator: theta-scheme on the stiff linear parts (theta = 1 on the
/// first step, Crank-Nicolson afterwards), AB2 on the explicit terms. The
/// pressure and the constraint int_0^1 u dy = 0 are solved with u per mode.
class ImexIntegrator {
public:
    ImexIntegrator(NSMState s, SolverOptions opt);
    ~ImexIntegrator();
    ImexIntegrator(ImexIntegrator&&) noexcept;
    ImexIntegrator& operator=(ImexIntegrator&&) noexcept;

    void step();
    const NSMState& state() const { return state_; }
    const SolverOptions& options() const { return opt_; }
    long steps() const { return steps_; }

private:
    struct Cache;
    NSMState state_;
    SolverOptions opt_;
    long steps_ = 0;
    ExplicitTerms prev_;
    std::unique_ptr<Cache> cache_;
};

NSMState step_imex(const NSMState& s, double dt);
NSMState step_hydrostatic(const NSMState& s, double dt);

struct TrajectoryRecord {
    double t = 0.0;
    EnergyReport energy;
    InvariantReport inv;
    /// G^{delta0/2; s} norms of u and h.
    double norm_u = 0.0;
    double norm_h = 0.0;
    /// ||u||^2 + ||d_y h||^2 at (delta0/2, s).
    double decay_quantity = 0.0;
    double heat = 0.0;
    double wave = 0.0;
};

struct RunSpec {
    SolverOptions solver;
    double T = 0.1;
    int stride = 1;
    GevreyWeight weight;
    EnergyVariant variant = EnergyVariant::Lwp;
    double theta = 0.95 * kPi / 10.0;
    double blowup_threshold = 1e12;
    /// Record energy reports (costly); invariants are always tracked.
    bool energies = true;
};

struct RunResult {
    NSMState final_state;
    std::vector<TrajectoryRecord> records;
    long steps = 0;
    bool blowup = false;
    bool horizon_exceeded = false;
    std::string status = "ok";
    InvariantReport worst;
    double max_heat_increase = 0.0;
    double max_wave_increase = 0.0;
    bool positivity = true;
};

using StepObserver = std::function<void(const NSMState&)>;

RunResult run_simulation(const NSMState& s0, const RunSpec& spec, const StepObserver& obs = {});
RunResult run_linear(const NSMState& s0, const RunSpec& spec);
RunResult run_full(const NSMState& s0, const RunSpec& spec);
RunResult run_hydrostatic(const NSMState& s0, const RunSpec& spec);

}  // namespace nsm
