// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace fqam {

using cplx = std::complex<double>;

// In-place unnormalized DFT of any composite length (FFTW backend).
// forward: X[k] = sum_n x[n] e^{-j2pi nk/N}
// inverse: X[k] = sum_n x[n] e^{+j2pi nk/N}
void fft_forward(std::vector<cplx>& data);
void fft_inverse(std::vector<cplx>& data);

} // namespace fqam
