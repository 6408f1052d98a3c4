// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/error.hpp"
#include "nsmlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nsm {

int Grid::slot(int q) const
{
    if (q > Nx / 2 || q <= -Nx / 2) return -1;
    return q >= 0 ? q : q + Nx;
}

std::vector<double> Grid::nodes() const
{
    std::vector<double> y(M());
    for (int j = 0; j < M(); ++j) y[j] = this->y(j);
    return y;
}

std::vector<double> Grid::wavenumbers() const
{
    std::vector<double> k(Nx);
    for (int m = 0; m < Nx; ++m) k[m] = this->k(m);
    return k;
}

Grid make_grid(int Nx, int Ny, double Lx)
{
    if (Nx <= 0 || Ny <= 0) fail(ErrorCode::InvalidArgument, "grid sizes must be positive");
    if (Nx % 2 != 0) fail(ErrorCode::InvalidArgument, "Nx must be even, got " + std::to_string(Nx));
    if (Nx < 8) fail(ErrorCode::InvalidArgument, "Nx must be at least 8");
    if (Ny < 8) fail(ErrorCode::InvalidArgument, "Ny must be at least 8");
    if (!(Lx > 0.0) || !std::isfinite(Lx)) fail(ErrorCode::InvalidArgument, "Lx must be positive");
    Grid g;
    g.Nx = Nx;
    g.Ny = Ny;
    g.Lx = Lx;
    return g;
}

SpectralField::SpectralField(const Grid& g, bool real, BoundaryCondition bc)
    : grid_(g), real_(real), bc_(bc), c_(static_cast<std::size_t>(g.Nx) * g.M())
{
}

Profile SpectralField::profile(int m) const
{
    return Profile(mode(m), mode(m) + grid_.M());
}

void SpectralField::set_profile(int m, const Profile& p)
{
    std::copy(p.begin(), p.end(), mode(m));
}

void SpectralField::zero()
{
    std::fill(c_.begin(), c_.end(), cplx{});
}

double SpectralField::max_abs() const
{
    double mx = 0.0;
    for (const auto& z : c_) mx = std::max(mx, std::abs(z));
    return mx;
}

double SpectralField::symmetry_defect() const
{
    const int M = grid_.M();
    double d = 0.0;
    for (int m = 1; m < grid_.Nx / 2; ++m) {
        const int mm = grid_.Nx - m;
        for (int j = 0; j < M; ++j) d = std::max(d, std::abs((*this)(mm, j) - std::conj((*this)(m, j))));
    }
    for (int j = 0; j < M; ++j) {
        d = std::max(d, std::abs((*this)(0, j).imag()));
        d = std::max(d, std::abs((*this)(grid_.nyquist_slot(), j).imag()));
    }
    return d;
}

void SpectralField::symmetrize()
{
    const int M = grid_.M();
    for (int m = 1; m < grid_.Nx / 2; ++m) {
        const int mm = grid_.Nx - m;
        for (int j = 0; j < M; ++j) {
            const cplx a = 0.5 * ((*this)(m, j) + std::conj((*this)(mm, j)));
            (*this)(m, j) = a;
            (*this)(mm, j) = std::conj(a);
        }
    }
    for (int j = 0; j < M; ++j) {
        (*this)(0, j) = (*this)(0, j).real();
        (*this)(grid_.nyquist_slot(), j) = (*this)(grid_.nyquist_slot(), j).real();
    }
    real_ = true;
}

static void check_same(const Grid& a, const Grid& b)
{
    if (a != b) fail(ErrorCode::InvalidArgument, "grid mismatch");
}

SpectralField& SpectralField::operator+=(const SpectralField& o)
{
    check_same(grid_, o.grid_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    real_ = real_ && o.real_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o)
{
    check_same(grid_, o.grid_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    real_ = real_ && o.real_;
    return *this;
}

SpectralField& SpectralField::operator*=(double a)
{
    for (auto& z : c_) z *= a;
    return *this;
}

SpectralField& SpectralField::axpy(cplx a, const SpectralField& x)
{
    check_same(grid_, x.grid_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
    real_ = real_ && x.real_ && a.imag() == 0.0;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }

}  // namespace nsm
