// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fqam/frame.hpp"
#include "fqam/prototype_filter.hpp"

namespace fqam {

/// Filter-bank geometry: M subcarriers, overlap L, B banks.
/// Bank b shapes subcarriers m with m mod B == b. Symbols are spaced
/// M samples (no cyclic prefix) and overlap-add over L symbol periods.
struct FbmcConfig {
    int m_total = 0; // M
    int overlap = 0; // L
    std::vector<PrototypeFilter> filters; // one per bank

    int num_banks() const { return static_cast<int>(filters.size()); }
    const PrototypeFilter& filter_for(int m) const { return filters[static_cast<std::size_t>(m % num_banks())]; }
    int signal_length(int num_symbols) const { return (num_symbols - 1) * m_total + overlap * m_total; }
    void validate() const; // throws std::invalid_argument
};

/// Literal evaluation of the synthesis double sum. Oracle for the fast path.
TimeSignal synthesize_direct(const TxFrame& frame, const FbmcConfig& cfg);

/// Per bank: M/B-point inverse DFT, periodic repetition to L*M samples,
/// multiplication by the bank's filter with its subcarrier-offset phase,
/// overlap-add. Equal to synthesize_direct.
TimeSignal synthesize_fast(const TxFrame& frame, const FbmcConfig& cfg);

/// Matched-filter bank sampled at lags k*M: inner products against
/// p_b[n-kM] e^{j2pi n m/M}, conjugated. Returns a K x M grid, symbol-major.
std::vector<cplx> analyze(const TimeSignal& signal, const FbmcConfig& cfg, int num_symbols);

/// Cross-coefficient between the transmit pulse on subcarrier m and the
/// receive filter on subcarrier m_prime at lag k*M, filters zero-padded
/// outside [0, L*M). Requires |k| <= L.
cplx transmux_response(const PrototypeFilter& tx, const PrototypeFilter& rx,
                       int m_total, int m, int m_prime, int lag);

} // namespace fqam
