// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/illposed.hpp"
#include "nsmlab/tridiag.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nsm {

namespace {

struct Osc {
    int n;
    double r;  // 1/dz^2
    std::vector<cplx> pot;

    std::vector<cplx> apply(const std::vector<cplx>& x) const
    {
        std::vector<cplx> y(n);
        for (int i = 0; i < n; ++i) {
            cplx s = (2.0 * r + pot[i]) * x[i];
            if (i > 0) s -= r * x[i - 1];
            if (i + 1 < n) s -= r * x[i + 1];
            y[i] = s;
        }
        return y;
    }

    bool factor(cplx shift, TridiagLU& lu) const
    {
        Tridiag t(n);
        for (int i = 0; i < n; ++i) {
            t.lower[i] = -r;
            t.upper[i] = -r;
            t.diag[i] = 2.0 * r + pot[i] - shift;
        }
        return lu.factor(t, 0.0);
    }
};

double vnorm(const std::vector<cplx>& x)
{
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

cplx rayleigh(const Osc& A, const std::vector<cplx>& x)
{
    const std::vector<cplx> y = A.apply(x);
    cplx num = 0.0;
    double den = 0.0;
    for (int i = 0; i < A.n; ++i) {
        num += std::conj(x[i]) * y[i];
        den += std::norm(x[i]);
    }
    return num / den;
}

double residual(const Osc& A, const std::vector<cplx>& x, cplx lam)
{
    const std::vector<cplx> y = A.apply(x);
    double s = 0.0;
    for (int i = 0; i < A.n; ++i) s += std::norm(y[i] - lam * x[i]);
    return std::sqrt(s) / (std::abs(lam) * vnorm(x));
}

/// Inverse iteration at a fixed shift, then Rayleigh-quotient shifts if needed.
OscillatorEigen iterate(const Osc& A, cplx shift)
{
    OscillatorEigen out;
    out.shift = shift;
    std::vector<cplx> x(A.n);
    for (int i = 0; i < A.n; ++i) x[i] = 1.0 + 0.01 * std::sin(1.0 + 7.0 * i);
    TridiagLU lu;
    cplx s = shift;
    if (!A.factor(s, lu)) {
        s *= 1.0 + 1e-9;
        if (!A.factor(s, lu)) return out;
    }
    cplx lam = s;
    const int max_fixed = 200;
    const int max_rq = 30;
    for (int it = 0; it < max_fixed + max_rq; ++it) {
        if (it >= max_fixed) {
            // Rayleigh-quotient shift update.
            cplx sn = lam * (1.0 + 1e-13);
            if (!A.factor(sn, lu)) break;
        }
        lu.solve(x);
        const double nx = vnorm(x);
        if (!(nx > 0.0) || !std::isfinite(nx)) break;
        for (auto& z : x) z /= nx;
        lam = rayleigh(A, x);
        out.iterations = it + 1;
        out.residual = residual(A, x, lam);
        if (out.residual <= 1e-12) {
            out.converged = true;
            break;
        }
    }
    out.lambda = lam;
    out.converged = out.converged || out.residual <= 1e-8;
    return out;
}

}  // namespace

std::vector<OscillatorEigen> oscillator_spectrum(int k, int Ny, int count)
{
    if (k == 0) fail(ErrorCode::InvalidArgument, "oscillator_spectrum: k must be nonzero");
    if (count < 1 || count > 10) fail(ErrorCode::InvalidArgument, "oscillator_spectrum: count must lie in [1, 10]");
    const int need = required_ny(k);
    if (Ny < need) {
        fail(ErrorCode::Resolution, "oscillator_spectrum: Ny=" + std::to_string(Ny) +
                                        " violates the resolution rule; need Ny >= " + std::to_string(need));
    }
    Osc A;
    A.n = Ny;
    const double dz = 1.0 / (Ny + 1);
    A.r = 1.0 / (dz * dz);
    A.pot.resize(Ny);
    for (int i = 0; i < Ny; ++i) {
        const double z = -0.5 + (i + 1) * dz;
        A.pot[i] = cplx(0.0, static_cast<double>(k) * z * z);
    }
    if (count == 1) {
        const double K = std::abs(static_cast<double>(k));
        return {iterate(A, std::polar(std::sqrt(K), k > 0 ? kPi / 4.0 : -kPi / 4.0))};
    }
    // Dense spectrum for the shifts; inverse iteration polishes each one.
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(Ny, Ny);
    for (int i = 0; i < Ny; ++i) {
        D(i, i) = 2.0 * A.r + A.pot[i];
        if (i > 0) D(i, i - 1) = -A.r;
        if (i + 1 < Ny) D(i, i + 1) = -A.r;
    }
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(D, false);
    if (es.info() != Eigen::Success) fail(ErrorCode::Solver, "oscillator_spectrum: dense eigensolver failed");
    std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + Ny);
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
    std::vector<OscillatorEigen> out;
    for (int n = 0; n < count && n < Ny; ++n) out.push_back(iterate(A, ev[n] * (1.0 + 1e-10)));
    return out;
}

OscillatorIdentity oscillator_identity(int k, int Ny)
{
    if (k == 0) fail(ErrorCode::InvalidArgument, "oscillator_identity: k must be nonzero");
    const int K = std::abs(k);
    OscillatorIdentity r;
    r.k = k;
    r.Ny = Ny;
    r.ground = oscillator_spectrum(K, Ny, 1).front();
    const DispersionRoot d = dispersion_root_unchecked(k);
    const cplx c2c = d.c * d.c + d.c;
    const double Kd = static_cast<double>(K);
    r.harmonic = std::polar(std::sqrt(Kd), kPi / 4.0);
    r.printed = c2c - cplx(0.0, static_cast<double>(k) / 4.0);
    r.corrected = -c2c + cplx(0.0, Kd / 4.0);
    const cplx l = r.ground.lambda;
    r.rel_harmonic = std::abs(l - r.harmonic) / std::abs(r.harmonic);
    r.rel_printed = std::abs(l - r.printed) / std::abs(l);
    r.rel_corrected = std::abs(l - r.corrected) / std::abs(l);
    return r;
}

}  // namespace nsm
