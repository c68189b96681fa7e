// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

#include "fqam/fbmc.hpp"
#include "fqam/modulation.hpp"
#include "fqam/rng.hpp"

namespace testutil {

// Symmetric sine-window prototype for geometries phydyas() does not cover
// (overlap factors other than 4).
inline fqam::PrototypeFilter sine_filter(int m, int l)
{
    fqam::PrototypeFilter f;
    f.num_subcarriers = m;
    f.overlap = l;
    f.label = "sine";
    const int len = l * m;
    f.coeffs.resize(static_cast<std::size_t>(len));
    for (int n = 0; n < len; ++n)
        f.coeffs[static_cast<std::size_t>(n)] = std::sin(M_PI * n / len);
    return fqam::normalized(std::move(f));
}

inline fqam::FbmcConfig make_waveform(int m, int l, int b)
{
    fqam::FbmcConfig wf;
    wf.m_total = m;
    wf.overlap = l;
    fqam::PrototypeFilter base = (l == 4) ? fqam::phydyas(m, l) : sine_filter(m, l);
    wf.filters.push_back(base);
    if (b == 2)
        wf.filters.push_back(fqam::block_interleave(base));
    return wf;
}

// Uniformly random frame: every subcarrier loaded with a random QPSK value.
inline fqam::TxFrame random_dense_frame(int k, int m, fqam::Rng& rng)
{
    fqam::TxFrame f;
    f.num_symbols = k;
    f.num_subcarriers = m;
    f.grid.resize(static_cast<std::size_t>(k) * m);
    const double inv = 1.0 / std::sqrt(2.0);
    for (auto& v : f.grid)
        v = {inv * (rng.bit() ? 1.0 : -1.0), inv * (rng.bit() ? 1.0 : -1.0)};
    return f;
}

inline double rel_rms(const std::vector<fqam::cplx>& a, const std::vector<fqam::cplx>& b)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

inline std::vector<std::uint8_t> random_bits(std::size_t n, fqam::Rng& rng)
{
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits)
        b = rng.bit();
    return bits;
}

} // namespace testutil
