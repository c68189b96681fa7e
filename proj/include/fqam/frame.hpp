// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <vector>

namespace fqam {

using cplx = std::complex<double>;

/// Payload type of one FQAM group: full QAM, or amplitude-only on one axis.
enum class GroupMode { Qam, AskReal, AskImag };

/// K x M grid of subcarrier values D_m[k] (symbol-major), zeros on
/// inactive tones, plus the per-group tone/mode annotations the encoder
/// committed to.
struct TxFrame {
    int num_symbols = 0;     // K
    int num_subcarriers = 0; // M
    std::vector<cplx> grid;  // size K*M
    std::vector<int> tones;       // size K*G, local tone index per group
    std::vector<GroupMode> modes; // size K*G

    cplx& at(int k, int m) { return grid[static_cast<std::size_t>(k) * num_subcarriers + m]; }
    const cplx& at(int k, int m) const { return grid[static_cast<std::size_t>(k) * num_subcarriers + m]; }
};

/// Complex baseband sample sequence. sample_rate is in units of the
/// subcarrier spacing times M (normalized 1.0 unless a physical rate is set).
struct TimeSignal {
    std::vector<cplx> samples;
    double sample_rate = 1.0;
};

} // namespace fqam
