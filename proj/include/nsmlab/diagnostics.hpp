// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/gevrey.hpp"
#include "nsmlab/solver.hpp"
#include "nsmlab/state.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nsm {

struct RateFit {
    std::vector<double> x;
    std::vector<double> y;
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Least squares y = slope x + intercept; at least 2 points (studies require 4).
RateFit fit_line(const std::vector<double>& x, const std::vector<double>& y);
/// Fit of log y against log x.
RateFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct PoincareTheta {
    double theta = 0.0;
    /// min ||phi'||/||phi|| over the discrete Dirichlet space on Ny nodes.
    double discrete_ratio = 0.0;
    int Ny = 0;
};

/// theta = (pi/10)(1 - 0.05), validated by the lowest Dirichlet eigenvalue.
PoincareTheta poincare_theta(int Ny = 256);

struct DtNormIdentity {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
    /// Residual of the identity without the lambda' factor.
    double unweighted_residual = 0.0;
};

/// lambda'||d_t phi||^2_{sigma+1/4} = lambda'||d_t[A_{sigma+1/4} phi]||^2
///   + d/dt(lambda'^2 ||phi||^2_{sigma+1/2}) - 2 lambda'' lambda' ||phi||^2_{sigma+1/2}
///   + lambda'^3 ||phi||^2_s,
/// evaluated at the middle level of three with centered differences.
DtNormIdentity check_dtnorm_identity(const std::vector<SpectralField>& history, const GevreyWeight& w,
                                     double t_mid, double dt);

struct ConvergenceConfig {
    Grid grid;
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    InitialDataSpec data;
    double mu = 1.0;
    double mu0 = 1.0;
    bool normalized = true;
    double s = 4.0;
    double delta0 = 1.0;
    LambdaSchedule schedule{};
    double T = 1.0 / 64.0;
    double dt = 1.0 / 6400.0;
    int stride = 10;
};

struct ConvergenceResult {
    RateFit fit;
    std::vector<double> eps;
    std::vector<double> E;
    bool monotone = false;
    double worst_div = 0.0;
    double worst_curl = 0.0;
    double worst_div_e = 0.0;
};

/// E(eps) = sup_t [||u^eps - u^P||^2_{s-4} + ||d_y(h^eps - h^P)||^2_{s-4-3/4}
///                 + ||h^eps - h^P||^2_{s-4-1/4}] at radius delta0/2.
ConvergenceResult convergence_study(const ConvergenceConfig& cfg);

struct DecayConfig {
    Grid grid;
    InitialDataSpec data;
    double eps = 0.5;
    double s = 10.0;
    double delta0 = 1.0;
    double T = 40.0;
    double dt = 0.01;
    int stride = 10;
    double theta = 0.95 * kPi / 10.0;
    bool linear_only = false;
};

struct DecayResult {
    RateFit fit;
    /// -slope of log(||u||^2 + ||d_y h||^2).
    double exponent = 0.0;
    double target = 0.0;
    double t_transient = 0.0;
    bool blowup = false;
    bool positivity = true;
    bool degenerate = false;
    InvariantReport worst;
    std::vector<double> t;
    std::vector<double> q;
};

DecayResult decay_study(const DecayConfig& cfg);

struct RecoveryRatios {
    double K_low = 0.0;   ///< ||(phi, psi)||_{s} / ||omega||_{s-1}
    double K_grad = 0.0;  ///< ||d_y(phi, psi)||_{s} / ||omega||_{s}
    double round_trip = 0.0;
    int samples = 0;
};

RecoveryRatios recovery_ratios(const Grid& g, int samples, std::uint64_t seed, double s, double radius);

struct PropertySuiteReport {
    CommutatorReport commutator;
    CommutatorReport commutator_doubled;
    std::array<double, 3> commutator_stability{};
    bool commutator_ok = false;
    double submultiplicative_max = 0.0;
    std::array<double, 2> product_K{};
    std::array<double, 2> product_K_half{};
    bool product_ok = false;
    RecoveryRatios recovery_coarse;
    RecoveryRatios recovery_fine;
    double recovery_order = 0.0;
    bool recovery_ok = false;
    bool ok = false;
    double seconds = 0.0;
};

struct PropertySuiteConfig {
    long commutator_samples = 100000;
    long product_pairs = 1000;
    int recovery_samples = 50;
    std::uint64_t seed = 1;
};

PropertySuiteReport run_property_suite(const PropertySuiteConfig& cfg);

/// Manufactured recovery: max error for omega(k=1) = -(1+pi^2) sin(pi y); returns the observed order.
double recovery_manufactured_order(int Ny_coarse);

}  // namespace nsm
