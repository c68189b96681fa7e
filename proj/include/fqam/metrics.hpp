// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqam/fbmc.hpp"
#include "fqam/modulation.hpp"

namespace fqam {

enum class SirMode { AllActive, FqamAverage, FqamWorstCase, ProjectedAsk };

const char* to_string(SirMode mode);

struct SelfSirReport {
    double p_signal = 0.0;
    double p_interference = 0.0;
    double gamma_db = 0.0; // +inf sentinel when p_interference == 0
    SirMode mode = SirMode::AllActive;
};

struct SelfSirOptions {
    /// Restrict interferer tone choices to non-edge positions
    /// (spacing >= 2 subcarrier spacings from any other group's active tone).
    bool non_edge_only = false;
};

/// Intrinsic signal-to-self-interference of the waveform on the reference
/// subcarrier: desired matched-filter power over summed leakage power
/// across all subcarriers and lags in [-L+1, L], desired term excluded.
///
/// AllActive      every subcarrier transmits (dense QAM grid).
/// FqamAverage    interferer terms weighted by their activation probability
///                (one tone per group, uniform).
/// FqamWorstCase  each interfering group pinned to its worst tone.
/// ProjectedAsk   reference is an edge tone of a colliding pair; pair and
///                own-channel leakage projected onto the ASK detection axis
///                after de-rotation, remaining groups worst-case non-edge.
SelfSirReport self_sir(const FbmcConfig& wf, const FqamConfig& mod, int ref_subcarrier,
                       SirMode mode, const SelfSirOptions& opt = {});

/// Welch-averaged periodogram: periodic Hann window, hop =
/// segment_len * (1 - overlap_fraction), peak-normalized dB, frequency
/// axis in units of the subcarrier spacing (num_subcarriers bins per
/// sample-rate unit).
PsdCurve signal_psd(const TimeSignal& s, int segment_len, double overlap_fraction,
                    int num_subcarriers);

struct PaprCcdf {
    std::vector<double> thresholds_db; // 0.1 dB grid
    std::vector<double> exceed_prob;   // P(PAPR > threshold)
};

/// Per-symbol PAPR over M-sample strides aligned to symbol starts:
/// max |x|^2 / mean |x|^2 within each stride, in dB.
std::vector<double> papr_per_symbol_db(const TimeSignal& s, int symbol_len);

/// CCDF of the per-symbol PAPR on a 0.1 dB grid. Throws if the symbol
/// count cannot resolve min_depth (needs >= 10/min_depth symbols).
PaprCcdf papr_ccdf(const TimeSignal& s, int symbol_len, double min_depth = 1e-3);
PaprCcdf papr_ccdf_from_samples(std::span<const double> papr_db, double min_depth = 1e-3);

/// P(PAPR > threshold) with thresholds below the grid reported as 1.
double ccdf_at(const PaprCcdf& c, double threshold_db);
/// Smallest grid threshold whose CCDF is <= prob.
double threshold_at_ccdf(const PaprCcdf& c, double prob);

struct BerRecord {
    double snr_db = 0.0;
    std::uint64_t bits_sent = 0;
    std::uint64_t bit_errors = 0;

    double ber() const { return bits_sent ? static_cast<double>(bit_errors) / static_cast<double>(bits_sent) : 0.0; }
};

/// Hamming distance between equal-length bit streams.
BerRecord count_errors(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx);

/// Consumed tone+payload bits per group-symbol.
double empirical_rate(std::uint64_t total_bits, std::uint64_t total_group_symbols);

} // namespace fqam
