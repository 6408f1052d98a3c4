// SPDX-License-Identifier: Apache-2.0
#include "nsmlab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsm {

std::vector<std::complex<double>> Tridiag::apply(const std::vector<std::complex<double>>& x) const
{
    const int n = size();
    std::vector<std::complex<double>> y(n);
    for (int i = 0; i < n; ++i) {
        std::complex<double> s = diag[i] * x[i];
        if (i > 0) s += lower[i] * x[i - 1];
        if (i + 1 < n) s += upper[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

bool TridiagLU::factor(const Tridiag& t, double tol)
{
    const int n = t.size();
    l_ = t.lower;
    u_ = t.upper;
    d_.assign(n, {});
    min_ratio_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        std::complex<double> di = t.diag[i];
        if (i > 0) {
            l_[i] = t.lower[i] / d_[i - 1];
            di -= l_[i] * u_[i - 1];
        }
        double scale = std::abs(t.diag[i]);
        if (i > 0) scale = std::max(scale, std::abs(t.lower[i]));
        if (i + 1 < n) scale = std::max(scale, std::abs(t.upper[i]));
        if (scale == 0.0) scale = 1.0;
        const double ratio = std::abs(di) / scale;
        min_ratio_ = std::min(min_ratio_, ratio);
        if (!(ratio > tol)) return false;
        d_[i] = di;
    }
    return true;
}

void TridiagLU::solve(std::vector<std::complex<double>>& b) const
{
    const int n = size();
    for (int i = 1; i < n; ++i) b[i] -= l_[i] * b[i - 1];
    b[n - 1] /= d_[n - 1];
    for (int i = n - 2; i >= 0; --i) b[i] = (b[i] - u_[i] * b[i + 1]) / d_[i];
}

}  // namespace nsm
