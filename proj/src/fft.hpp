// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

namespace nsm::detail {

/// Batched length-Nx transforms over M interleaved columns (stride M, distance 1).
/// Plans are built with FFTW_ESTIMATE so results are reproducible run to run.
void fft_synthesize(int Nx, int M, std::complex<double>* data);
void fft_analyze(int Nx, int M, std::complex<double>* data);

}  // namespace nsm::detail
