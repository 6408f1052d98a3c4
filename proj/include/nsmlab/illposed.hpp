// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace nsm {

/// Roots of c^2 + c = i|k|/4 - e^{i pi/4} sqrt|k|.
struct DispersionRoot {
    int k = 0;
    /// Root with the larger real part.
    cplx c;
    cplx c_other;
    /// -1/2 + sqrt(1 + 4i|k| - 4 sqrt|k| e^{i pi/4}), evaluated as printed.
    cplx printed;
    double residual = 0.0;
    double printed_residual = 0.0;
    /// sqrt|k| <= Re c <= sqrt(2|k|) for the derived and the printed root.
    bool bracket_derived = false;
    bool bracket_printed = false;
};

/// Throws BelowThreshold when no root has positive real part.
DispersionRoot dispersion_root(int k);
/// Both roots without the threshold check.
DispersionRoot dispersion_root_unchecked(int k);
/// Smallest M with Re c(k) > 0 for every M <= |k| <= search_max.
int illposedness_threshold(int search_max = 1 << 16);

/// Resolution rule for the Gaussian of width |k|^{-1/4}: Ny >= ceil(40 |k|^{1/4}).
int required_ny(int k);

/// f_k(y_j) = m0 exp(-(sqrt(i|k|)/2)(y_j - 1/2)^2) on nodes j/(Ny+1).
Profile quasimode_profile(int k, int Ny, double m0 = 1.0);

struct IllposedParams {
    double m0 = 1.0;
    double theta1 = 0.9 / (16.0 * 1.4142135623730951);
    double delta = 0.9 / (16.0 * 1.4142135623730951) / 4.0;
    double C0 = 0.5;
    double s_growth = 0.25;
    double T0 = 0.3;
    double dt = 2.5e-4;
    /// Ny = max(required_ny(k), ny_factor * required_ny(k)).
    double ny_factor = 1.0;
    double kappa = 1.0;
};

struct ModeProblem {
    int k = 0;
    cplx c;
    int Ny = 0;
    IllposedParams par;
    double Tk() const;
    double dy() const { return 1.0 / (Ny + 1); }
};

/// Validates k < 0, theta1 < 1/(16 sqrt 2), |k| above threshold, and the resolution rule.
ModeProblem make_mode_problem(int k, const IllposedParams& par, int Ny = 0);

/// |k|^{-5/8} e^{ct} (f_k(y) - f_k(0)); the physical field is Re(. e^{ikx}).
Profile explicit_solution_h1(const ModeProblem& p, double t);

struct InitialPair {
    Profile zeta;
    Profile zeta1;
    /// zeta(x, y) = a_k(y) cos kx + b_k(y) sin kx.
    std::vector<double> a_k, b_k;
};
InitialPair initial_pair(const ModeProblem& p);

/// |k|^{-5/8} (c^2 + c + ik y(1-y)) e^{ct} f_k(0).
Profile boundary_forcing(const ModeProblem& p, double t);

using ForcingFn = std::function<Profile(double)>;

struct ModeTrajectory {
    std::vector<double> t;
    std::vector<double> l2;
    std::vector<double> h1;
    std::vector<Profile> h;
};

/// sqrt(trapz |h|^2 + sum |h_{j+1} - h_j|^2 / dy).
double h1_norm(const Profile& h, double dy);
Profile poiseuille_profile(int Ny);

/// h_tt + h_t - h_yy + ik V h = F per mode, Crank-Nicolson with trapezoidal forcing.
ModeTrajectory integrate_mode_wave(double k, const Profile& V, const Profile& h0, const Profile& ht0,
                                   const ForcingFn& forcing, double T, double dt,
                                   bool keep_profiles = false);

struct GrowthFit {
    double rate = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int n = 0;
};

/// Least-squares slope of log of the chosen norm over [t0, t1].
GrowthFit growth_exponent(const ModeTrajectory& tr, double t0, double t1, bool use_h1 = true);

struct OscillatorEigen {
    cplx lambda;
    cplx shift;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Dirichlet eigenvalues of -d_zz + ik z^2 on [-1/2, 1/2] (Ny interior nodes).
std::vector<OscillatorEigen> oscillator_spectrum(int k, int Ny, int count);

/// Ground state of -d_zz + i|k| z^2 against the quantities built from c(k).
struct OscillatorIdentity {
    int k = 0;
    int Ny = 0;
    OscillatorEigen ground;
    /// e^{i pi/4} sqrt|k|.
    cplx harmonic;
    /// c^2 + c - ik/4 as printed, and -(c^2 + c) + i|k|/4.
    cplx printed;
    cplx corrected;
    double rel_harmonic = 0.0;
    double rel_printed = 0.0;
    double rel_corrected = 0.0;
};

OscillatorIdentity oscillator_identity(int k, int Ny);

struct GrowthCheck {
    int k = 0;
    DispersionRoot root;
    int Ny = 0;
    double Tk = 0.0;
    double T0 = 0.0;
    GrowthFit fit;
    GrowthFit fit_l2;
    double rel_rate_error = 0.0;
    double m0_measured = 0.0;
    double zeta_h1 = 0.0;
    double zeta_l2 = 0.0;
    /// sup_{t <= T0} ||h2||_{L2}, and e^{(delta/2) sqrt|k|} times it.
    double h2_sup = 0.0;
    double h2_scaled = 0.0;
    double superposition = 0.0;
    double h1_match = 0.0;
    std::vector<double> check_times;
    std::vector<double> check_norm;
    std::vector<double> check_bound;
    bool lower_bound_pass = false;
    bool h2_small = false;
    double forcing_sup0 = 0.0;
    double forcing_K = 0.0;
};

GrowthCheck theorem_growth_check(const ModeProblem& p);

}  // namespace nsm
