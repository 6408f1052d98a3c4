// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace nsm {

/// Complex tridiagonal system: lower[i] u[i-1] + diag[i] u[i] + upper[i] u[i+1].
/// lower[0] and upper[n-1] are ignored.
struct Tridiag {
    std::vector<std::complex<double>> lower, diag, upper;

    explicit Tridiag(int n = 0) : lower(n), diag(n), upper(n) {}
    int size() const { return static_cast<int>(diag.size()); }
    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& x) const;
};

/// Thomas factorization kept for repeated solves.
class TridiagLU {
public:
    TridiagLU() = default;
    /// Returns false when a pivot falls below tol times the row scale.
    bool factor(const Tridiag& t, double tol = 1e-13);
    void solve(std::vector<std::complex<double>>& rhs) const;
    int size() const { return static_cast<int>(d_.size()); }
    double min_pivot_ratio() const { return min_ratio_; }

private:
    std::vector<std::complex<double>> l_, d_, u_;
    double min_ratio_ = 0.0;
};

}  // namespace nsm
