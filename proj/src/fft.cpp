// SPDX-License-Identifier: Apache-2.0
#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace nsm::detail {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_plan_mutex;
std::map<std::pair<int, int>, PlanPair> g_plans;

const PlanPair& plans_for(int Nx, int M)
{
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = g_plans.find({Nx, M});
    if (it != g_plans.end()) return it->second;
    std::vector<std::complex<double>> scratch(static_cast<std::size_t>(Nx) * M);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    int n[1] = {Nx};
    PlanPair p;
    p.fwd = fftw_plan_many_dft(1, n, M, buf, nullptr, M, 1, buf, nullptr, M, 1,
                               FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_many_dft(1, n, M, buf, nullptr, M, 1, buf, nullptr, M, 1,
                               FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return g_plans.emplace(std::make_pair(Nx, M), p).first->second;
}

}  // namespace

void fft_synthesize(int Nx, int M, std::complex<double>* data)
{
    const PlanPair& p = plans_for(Nx, M);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.bwd, buf, buf);
}

void fft_analyze(int Nx, int M, std::complex<double>* data)
{
    const PlanPair& p = plans_for(Nx, M);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.fwd, buf, buf);
    const double s = 1.0 / Nx;
    const std::size_t n = static_cast<std::size_t>(Nx) * M;
    for (std::size_t i = 0; i < n; ++i) data[i] *= s;
}

}  // namespace nsm::detail
