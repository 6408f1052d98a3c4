// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/spectral.hpp"

#include <cstdint>

namespace nsm {

struct PhysicalParams {
    double eps = 0.1;
    double mu = 1.0;
    double mu0 = 1.0;
    double alpha = 0.01;
    double beta = 100.0;
    double gamma = 100.0;
    double c_light = 1.0;
    /// c_light / eps; carried for bookkeeping, no equation uses it.
    double m = 10.0;
    bool normalized = false;
    /// Use +2uh in the hydrostatic u-equation instead of the expanded -2uh.
    bool printed_plus_2uh = false;
};

/// alpha = mu eps^2, beta = 1/(mu^2 mu0 alpha), gamma = 1/(mu0 alpha);
/// normalized sets alpha = beta = gamma = 1.
PhysicalParams make_params(double eps, double mu, double mu0, bool normalized, double c_light = 1.0);
void validate_params(const PhysicalParams& p);

struct NSMState {
    Grid grid;
    PhysicalParams params;
    double t = 0.0;
    SpectralField u, v, h, ht, e, f, p;
    /// Potential with (e, f) = (d_y F, -d_x F).
    SpectralField F;
    /// Tendencies of the last accepted step (zero before the first step).
    SpectralField ut, vt;
};

NSMState make_zero_state(const Grid& g, const PhysicalParams& p);

enum class ProfileFamily { SineSeries, Bump };

struct InitialDataSpec {
    double amplitude = 1e-3;
    double delta0 = 1.0;
    double s = 10.0;
    std::uint64_t seed = 1;
    ProfileFamily family = ProfileFamily::SineSeries;
    double kappa = 1e-3;
    /// Highest |k| carrying data; 0 means the dealiasing cutoff.
    int kmax = 0;
};

NSMState init_data_gevrey(const InitialDataSpec& spec, const Grid& g, const PhysicalParams& p);

struct InvariantReport {
    double div_u = 0.0;
    double div_e = 0.0;
    double curl_ht = 0.0;
    double flux_u = 0.0;
    double top_v = 0.0;
    double wall_u = 0.0;
    double wall_h = 0.0;
    double symmetry = 0.0;
    bool ok(double tol = 1e-9) const
    {
        return div_u <= tol && div_e <= tol && curl_ht <= tol && wall_u == 0.0 && wall_h == 0.0;
    }
};

InvariantReport check_invariants(const NSMState& s);

}  // namespace nsm
