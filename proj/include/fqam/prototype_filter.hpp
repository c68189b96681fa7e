// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace fqam {

/// Real prototype filter p[n] of length overlap * num_subcarriers,
/// stored at unit energy. Immutable after construction by convention;
/// safe to share across threads.
struct PrototypeFilter {
    std::vector<double> coeffs;
    int overlap = 0;         // L: number of simultaneously overlapping symbols
    int num_subcarriers = 0; // M
    std::string label;

    int length() const { return static_cast<int>(coeffs.size()); }
    double energy() const;
};

/// Peak-normalized magnitude-squared response in dB; frequency axis in
/// units of the subcarrier spacing (strictly increasing, peak at 0 dB).
struct PsdCurve {
    std::vector<double> freq_over_df;
    std::vector<double> power_db;
};

/// Four-term frequency-sampling PHYDYAS design, unit energy.
/// Only the overlap-4 coefficient set is supported.
PrototypeFilter phydyas(int num_subcarriers, int overlap = 4);

/// Rewrites the L*M coefficients through an L x M block interleaver
/// (write row-wise, read column-wise). Length and energy preserved.
PrototypeFilter block_interleave(const PrototypeFilter& f);

/// Inverse permutation of block_interleave.
PrototypeFilter block_deinterleave(const PrototypeFilter& f);

/// Scales to unit energy; throws std::invalid_argument on zero energy.
PrototypeFilter normalized(PrototypeFilter f);

/// Coefficient file: line 1 "M=<int> L=<int>", then exactly L*M decimal
/// coefficients, one per line. Loaded filters are normalized.
PrototypeFilter load_filter(const std::string& path);
void save_filter(const PrototypeFilter& f, const std::string& path);

/// Magnitude-squared zero-padded DFT on oversample*L*M points,
/// peak-normalized. oversample >= 4.
PsdCurve filter_psd(const PrototypeFilter& f, int oversample);

/// Level of the largest lobe beyond the main lobe, in dB.
double first_sidelobe_db(const PsdCurve& c);

/// Largest response at and beyond |f| = freq_over_df, in dB.
double max_beyond_db(const PsdCurve& c, double freq_over_df);

} // namespace fqam
