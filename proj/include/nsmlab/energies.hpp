// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/gevrey.hpp"
#include "nsmlab/state.hpp"

namespace nsm {

enum class EnergyVariant { Lwp, Gwp };

/// Functionals at one time; sigma = s - 3/4. The gwp entries use the
/// e^{theta t}-weighted fields and are zero for the lwp variant.
struct EnergyReport {
    double t = 0.0;
    double lambda = 0.0;
    double dlambda = 0.0;

    double E_u = 0.0, D_u = 0.0, CK_u = 0.0;
    double E_h = 0.0, D_h = 0.0, CK_h = 0.0;
    double E_u_low = 0.0, D_u_low = 0.0, CK_u_low = 0.0;

    double E_uv_gwp = 0.0;
    double E_h_gwp = 0.0;
    double CK_h_gwp = 0.0;
    double E_u_low_gwp = 0.0;
    /// Squared: ||(d_t, eps d_x, d_y) h||^2 at index s - 1.
    double E_h_low_gwp = 0.0;
    /// (1/2)||(d_t, eps d_x, d_y) h~||^2 at sigma; E_h_gwp must dominate it.
    double E_h_gwp_floor = 0.0;
    bool positivity = true;

    bool blowup = false;
};

EnergyReport compute_energies(const NSMState& s, const GevreyWeight& w, EnergyVariant variant,
                              double theta);

/// ||d_t [A_r phi]||^2 with d_t A_r = A_r (d_t - lambda' <k>^{1/2}).
double dt_weighted_sq(const SpectralField& phi, const SpectralField& phi_t, const GevreyWeight& w_r);

/// Linear heat energy ||d_y u||^2 at (s + 1) and the wave energy
/// (beta/2)||h_t||^2 + (gamma/2)||(eps d_x, d_y) h||^2 at (s + 1), face differences in y.
double heat_energy(const NSMState& s, const GevreyWeight& w);
/// hydrostatic drops the eps d_x part.
double wave_energy(const NSMState& s, const GevreyWeight& w, bool hydrostatic = false);

}  // namespace nsm
