// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "nsmlab/spectral.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace nsm {

enum class ScheduleKind { None, ConstantRate, GwpDecaying };

/// lambda(0) = 0 for every kind.
///   ConstantRate: lambda' = 32 C C_in.
///   GwpDecaying:  lambda' = 16 exp(-theta t / (3 delta0)).
struct LambdaSchedule {
    ScheduleKind kind = ScheduleKind::None;
    double C = 1.0;
    double C_in = 1.0;
    double theta = 0.95 * kPi / 10.0;
    double delta0 = 1.0;
};

struct LambdaState {
    double lambda = 0.0;
    double dlambda = 0.0;
    double ddlambda = 0.0;
    /// delta0 - lambda(t) < delta0/2.
    bool horizon_exceeded = false;
};

LambdaState lambda_schedule(const LambdaSchedule& sch, double t);
/// Time at which lambda reaches delta0/2 (infinity for None).
double schedule_horizon(const LambdaSchedule& sch);

/// exp((delta0 - lambda(t)) <xi>^{1/2}) <xi>^s at time t.
struct GevreyWeight {
    double delta0 = 1.0;
    double s = 0.0;
    LambdaSchedule schedule{};
    double t = 0.0;

    double sigma() const { return s - 0.75; }
    double lambda() const { return lambda_schedule(schedule, t).lambda; }
    double radius() const { return delta0 - lambda(); }
    GevreyWeight with_s(double s_new) const
    {
        GevreyWeight w = *this;
        w.s = s_new;
        return w;
    }
    GevreyWeight at(double t_new) const
    {
        GevreyWeight w = *this;
        w.t = t_new;
        return w;
    }
    /// Time-independent weight with the given radius.
    static GevreyWeight fixed(double radius, double s)
    {
        GevreyWeight w;
        w.delta0 = radius;
        w.s = s;
        return w;
    }
};

inline double japanese(double xi) { return std::sqrt(1.0 + xi * xi); }

struct MultiplierValue {
    double value = 0.0;
    double log_value = 0.0;
    /// Exponent above 700: value is +inf, log_value stays exact.
    bool overflow = false;
};

MultiplierValue gevrey_multiplier(double xi, const GevreyWeight& w);
/// log of e^{radius <xi>^{1/2}} <xi>^s.
double log_gevrey_symbol(double xi, double radius, double s);

/// Weighted coefficients above this magnitude are a Gevrey blow-up.
inline constexpr double kGevreyBlowup = 1e300;

SpectralField apply_As(const SpectralField& f, const GevreyWeight& w, bool* overflow = nullptr);
SpectralField apply_As_inverse(const SpectralField& f, const GevreyWeight& w,
                               bool* overflow = nullptr);

enum class NormKind { L2, Linf };

/// p = 2: trapezoid in y of the per-y weighted l2 sum over k, then sqrt.
/// p = inf: max over y-nodes of the per-y weighted l2 value.
double gevrey_norm(const SpectralField& f, const GevreyWeight& w, NormKind p = NormKind::L2);
/// Weighted norm of d_y f measured with face differences (midpoint rule).
double gevrey_norm_dyplus(const SpectralField& f, const GevreyWeight& w);

/// Per-mode weighted squared contributions, trapezoid-integrated in y.
std::vector<double> gevrey_mode_energy(const SpectralField& f, const GevreyWeight& w);

struct CommutatorSample {
    double xi = 0.0;
    double eta = 0.0;
    double s = 1.0;
    double delta = 0.0;
    double c = 0.5;
};

enum class CommutatorRegime { Near = 0, LowHigh = 1, Comparable = 2, None = 3 };

CommutatorRegime classify_commutator(const CommutatorSample& smp);
/// |A_s(xi) - A_s(eta)| / rhs for the sample's regime; negative when unclassified.
double commutator_ratio(const CommutatorSample& smp);

struct CommutatorReport {
    std::array<double, 3> max_ratio{};
    std::array<long, 3> count{};
    long skipped = 0;
    bool all_finite = true;
};

CommutatorReport check_commutator_bounds(const std::vector<CommutatorSample>& samples);
/// Deterministic sample generator that places mass on parameter endpoints.
std::vector<CommutatorSample> make_commutator_samples(long n, std::uint64_t seed);

/// LHS/RHS of e^{d<xi>^{1/2}}<xi>^s <= e^{d<eta>^{1/2}} e^{d<xi-eta>^{1/2}} (<eta>^s + <xi-eta>^s).
double submultiplicative_ratio(double xi, double eta, double s, double delta);

struct ProductLawReport {
    double lhs = 0.0;
    /// (p,p',q,q') = (2,inf,2,inf) and (inf,2,inf,2).
    std::array<double, 2> rhs{};
    std::array<double, 2> K{};
};

ProductLawReport check_product_law(const SpectralField& f, const SpectralField& g,
                                   const GevreyWeight& w, double mu);

}  // namespace nsm
