// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/spectral.hpp"

namespace nsm {

/// (first, second) = (d_y F, -d_x F) for a potential F vanishing at y = 0, 1.
struct DivFreePair {
    SpectralField first;
    SpectralField second;
    SpectralField potential;
};

/// Solve (D2 - k^2) F = omega with F = 0 at both walls for every mode and
/// return (d_y F, -ik F). For k = 0 this yields first = int_0^y omega + const
/// with the constant fixed by a zero y-mean, second = 0.
DivFreePair recover_div_free_from_curl(const SpectralField& omega);
DivFreePair pair_from_potential(const SpectralField& F);

/// Discrete curl of a pair built on a potential: (D2 - k^2) F.
SpectralField curl_of_potential(const SpectralField& F);
/// max over modes and nodes of |ik first + d_y second| relative to the field scale.
double pair_divergence_defect(const DivFreePair& p);
/// |(D2 - k^2) F - omega| relative to |omega| (max norm).
double pair_curl_defect(const DivFreePair& p, const SpectralField& omega);

struct VFromU {
    SpectralField v;
    /// max over k != 0 of |v(k, 1)|.
    double top_violation = 0.0;
};

/// v(k, y) = -ik int_0^y u(k, y') dy' by the trapezoid rule.
VFromU v_from_u(const SpectralField& u);

struct ProjectionResult {
    SpectralField p;
    SpectralField du;
    SpectralField dv;
};

/// Remove the pressure from momentum tendencies (ru for u, rv for eps^2 v).
/// On return du = ru - ik p, dv = -ik int_0^y du, int_0^1 du = 0 for k != 0,
/// and the box averages of eps^2 dv = rv - d_y p hold on every cell.
/// k = 0: du = ru, dv = 0, p = int_0^y rv in the zero-mean gauge.
ProjectionResult pressure_projection_eps(const SpectralField& ru, const SpectralField& rv, double eps);
/// Box divergence of (du, dv) plus the top-wall value of dv, relative to the field scale.
double projection_divergence_defect(const ProjectionResult& r);

/// p = p_s(k) + int_0^y -alpha (e + e h + v + 2 v h + v h^2) dy'. When the
/// pressure-free u-tendency is supplied (interior nodes; walls ignored),
/// p_s(k != 0) makes int_0^1 (du - ik p) dy = 0 over the interior nodes; otherwise p_s = 0.
SpectralField hydrostatic_pressure(const SpectralField& e, const SpectralField& f,
                                   const SpectralField& v, const SpectralField& h, double alpha,
                                   const SpectralField* u_tendency = nullptr);

}  // namespace nsm
