// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nsm {

using cplx = std::complex<double>;
using Profile = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

/// Periodic-in-x, bounded-in-y grid. Nodes y_j = j/(Ny+1), j = 0..Ny+1.
struct Grid {
    int Nx = 0;
    int Ny = 0;
    double Lx = 2.0 * kPi;

    int M() const { return Ny + 2; }
    double dy() const { return 1.0 / (Ny + 1); }
    double y(int j) const { return j * dy(); }
    /// Integer wavenumber index of storage slot m (FFT order).
    int kint(int m) const { return m <= Nx / 2 ? m : m - Nx; }
    /// Scaled wavenumber of storage slot m.
    double k(int m) const { return kint(m) * (2.0 * kPi / Lx); }
    /// Storage slot of integer wavenumber q, or -1 when not retained.
    int slot(int q) const;
    int nyquist_slot() const { return Nx / 2; }
    /// Highest integer wavenumber kept by the 2/3 rule.
    int dealias_cutoff() const { return Nx / 3; }
    std::vector<double> nodes() const;
    std::vector<double> wavenumbers() const;

    bool operator==(const Grid& o) const
    {
        return Nx == o.Nx && Ny == o.Ny && Lx == o.Lx;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

Grid make_grid(int Nx, int Ny, double Lx);

enum class BoundaryCondition { Dirichlet0, Neumann0 };

/// Fourier coefficients in x on the y-nodes, stored mode-major:
/// coeff(m, j) at index m*M + j.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g, bool real = true,
                           BoundaryCondition bc = BoundaryCondition::Dirichlet0);

    const Grid& grid() const { return grid_; }
    bool real() const { return real_; }
    void set_real(bool r) { real_ = r; }
    BoundaryCondition bc() const { return bc_; }
    void set_bc(BoundaryCondition bc) { bc_ = bc; }

    cplx& operator()(int m, int j) { return c_[static_cast<std::size_t>(m) * grid_.M() + j]; }
    cplx operator()(int m, int j) const { return c_[static_cast<std::size_t>(m) * grid_.M() + j]; }
    cplx* mode(int m) { return c_.data() + static_cast<std::size_t>(m) * grid_.M(); }
    const cplx* mode(int m) const { return c_.data() + static_cast<std::size_t>(m) * grid_.M(); }
    Profile profile(int m) const;
    void set_profile(int m, const Profile& p);

    std::vector<cplx>& data() { return c_; }
    const std::vector<cplx>& data() const { return c_; }
    std::size_t size() const { return c_.size(); }

    void zero();
    double max_abs() const;
    /// max |g(-k) - conj(g(k))| over retained pairs, Nyquist must be real.
    double symmetry_defect() const;
    /// Enforce conjugate symmetry by averaging mirrored modes.
    void symmetrize();

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
    SpectralField& axpy(cplx a, const SpectralField& x);

private:
    Grid grid_{};
    bool real_ = true;
    BoundaryCondition bc_ = BoundaryCondition::Dirichlet0;
    std::vector<cplx> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);

/// Physical values on (x_n, y_j), same layout as SpectralField.
std::vector<cplx> to_physical(const SpectralField& f);
SpectralField from_physical(const Grid& g, const std::vector<cplx>& phys, bool real);

SpectralField ddx(const SpectralField& f);
SpectralField ddy(const SpectralField& f, BoundaryCondition bc);
/// Zero every mode with |k| > Nx/3 (and the Nyquist mode).
void dealias(SpectralField& f);
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g);

// Per-profile y-operators (length M = Ny+2, spacing dy).
Profile ddy_profile(const Profile& f, double dy, BoundaryCondition bc);
/// Compact three-point second difference at interior nodes; walls set to 0.
Profile d2_profile(const Profile& f, double dy);
/// Cumulative trapezoid integral from y = 0.
Profile cumtrapz(const Profile& f, double dy);
cplx trapz(const cplx* f, int M, double dy);
cplx trapz(const Profile& f, double dy);
/// sqrt of trapezoid rule for |f|^2.
double l2_norm(const Profile& f, double dy);
/// sqrt of sum |f_{j+1}-f_j|^2 / dy (face-difference H^1 seminorm).
double dplus_norm(const Profile& f, double dy);

/// Solve (a d_yy - b - q(y)) u = rhs for one mode. q may be empty (zero).
/// Dirichlet0 forces u = 0 at the walls; Neumann0 uses a ghost-point closure,
/// and a singular Neumann problem (b = 0, q = 0) is solved in the zero-mean gauge.
Profile helmholtz_solve_mode(double k, double a, cplx b, const Profile& q,
                             const Profile& rhs, double dy, BoundaryCondition bc);
/// Apply the same discrete operator (a d_yy - b - q) with the same closure.
Profile helmholtz_apply_mode(double a, cplx b, const Profile& q, const Profile& u,
                             double dy, BoundaryCondition bc);

/// Box divergence of (u, v) for one mode: ik (u_j + u_{j+1})/2 + (v_{j+1} - v_j)/dy.
std::vector<cplx> box_divergence(double k, const cplx* u, const cplx* v, int M, double dy);

}  // namespace nsm
