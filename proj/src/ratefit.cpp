// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/diagnostics.hpp"
#include "nsmlab/error.hpp"

#include <cmath>

namespace nsm {

RateFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) fail(ErrorCode::InvalidArgument, "fit_line: need at least 2 matched points");
    RateFit f;
    f.x = x;
    f.y = y;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) fail(ErrorCode::InvalidArgument, "fit_line: abscissae are degenerate");
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
    return f;
}

RateFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y)
{
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail(ErrorCode::InvalidArgument, "fit_loglog: values must be positive");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    RateFit f = fit_line(lx, ly);
    f.x = x;
    f.y = y;
    return f;
}

PoincareTheta poincare_theta(int Ny)
{
    if (Ny < 8) fail(ErrorCode::InvalidArgument, "poincare_theta: Ny must be at least 8");
    const int M = Ny + 2;
    const double dy = 1.0 / (Ny + 1);
    Profile x(M);
    for (int j = 1; j < M - 1; ++j) x[j] = 1.0 + 0.1 * std::cos(3.0 * j);
    double ratio = 0.0;
    for (int it = 0; it < 200; ++it) {
        // Inverse iteration for the smallest eigenvalue of -D2.
        Profile rhs(M);
        for (int j = 1; j < M - 1; ++j) rhs[j] = -x[j];
        Profile y = helmholtz_solve_mode(0.0, 1.0, 0.0, {}, rhs, dy, BoundaryCondition::Dirichlet0);
        const double n = l2_norm(y, dy);
        for (auto& z : y) z /= n;
        const double r = dplus_norm(y, dy) / l2_norm(y, dy);
        x = std::move(y);
        if (std::abs(r - ratio) <= 1e-15 * r) {
            ratio = r;
            break;
        }
        ratio = r;
    }
    PoincareTheta p;
    p.theta = kPi / 10.0 * (1.0 - 0.05);
    p.discrete_ratio = ratio;
    p.Ny = Ny;
    return p;
}

DtNormIdentity check_dtnorm_identity(const std::vector<SpectralField>& hist, const GevreyWeight& w,
                                     double t_mid, double dt)
{
    if (hist.size() < 3) fail(ErrorCode::InvalidArgument, "check_dtnorm_identity: need at least 3 time levels");
    if (!(dt > 0.0) || t_mid - dt < 0.0) fail(ErrorCode::InvalidArgument, "check_dtnorm_identity: bad time levels");
    const std::size_t c = hist.size() / 2;
    const SpectralField& fm = hist[c - 1];
    const SpectralField& f0 = hist[c];
    const SpectralField& fp = hist[c + 1];
    const double sg = w.s - 0.75;
    const double tm = t_mid - dt, tp = t_mid + dt;
    auto sq = [](const SpectralField& f, const GevreyWeight& ww) {
        const double n = gevrey_norm(f, ww, NormKind::L2);
        return n * n;
    };
    const LambdaState l0 = lambda_schedule(w.schedule, t_mid);
    const double lm = lambda_schedule(w.schedule, tm).dlambda;
    const double lp = lambda_schedule(w.schedule, tp).dlambda;

    SpectralField ft = fp;
    ft -= fm;
    ft *= 1.0 / (2.0 * dt);
    const GevreyWeight w4 = w.with_s(sg + 0.25);
    const SpectralField Ap = apply_As(fp, w4.at(tp));
    SpectralField dA = Ap;
    dA -= apply_As(fm, w4.at(tm));
    dA *= 1.0 / (2.0 * dt);
    const double dtA = sq(dA, GevreyWeight::fixed(0.0, 0.0));

    const GevreyWeight w2 = w.with_s(sg + 0.5);
    const double Xm = sq(fm, w2.at(tm)), X0 = sq(f0, w2.at(t_mid)), Xp = sq(fp, w2.at(tp));
    const double dX = (lp * lp * Xp - lm * lm * Xm) / (2.0 * dt);
    const double lam = l0.dlambda, lam2 = l0.ddlambda;
    const double phis = sq(f0, w.at(t_mid));
    const double lhs_u = sq(ft, w4.at(t_mid));

    DtNormIdentity r;
    r.lhs = lam * lhs_u;
    r.rhs = lam * dtA + dX - 2.0 * lam2 * lam * X0 + lam * lam * lam * phis;
    r.residual = std::abs(r.lhs - r.rhs);
    r.unweighted_residual = std::abs(lhs_u - (dtA + dX - 2.0 * lam2 * lam * X0 + lam * lam * lam * phis));
    return r;
}

}  // namespace nsm
