// SPDX-License-Identifier: Apache-2.0

#include "fqam/fbmc.hpp"

#include "fqam/fft.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fqam {
namespace {

// e^{j2pi r/M} for r = 0..M-1
std::vector<cplx> phase_table(int m_total)
{
    std::vector<cplx> t(static_cast<std::size_t>(m_total));
    for (int r = 0; r < m_total; ++r) {
        const double a = 2.0 * M_PI * r / m_total;
        t[static_cast<std::size_t>(r)] = {std::cos(a), std::sin(a)};
    }
    return t;
}

void check_frame(const TxFrame& frame, const FbmcConfig& cfg)
{
    if (frame.num_subcarriers != cfg.m_total)
        throw std::invalid_argument("frame/config subcarrier count mismatch");
    if (frame.grid.size() != static_cast<std::size_t>(frame.num_symbols) * frame.num_subcarriers)
        throw std::invalid_argument("frame grid size mismatch");
}

} // namespace

void FbmcConfig::validate() const
{
    if (m_total < 2)
        throw std::invalid_argument("m_total must be >= 2");
    if (overlap < 2)
        throw std::invalid_argument("overlap must be >= 2");
    if (filters.empty() || num_banks() > 2)
        throw std::invalid_argument("need 1 or 2 filter banks");
    if (m_total % num_banks() != 0)
        throw std::invalid_argument("m_total must be divisible by the bank count");
    for (const auto& f : filters)
        if (f.length() != overlap * m_total)
            throw std::invalid_argument("filter '" + f.label + "' length != L*M");
}

TimeSignal synthesize_direct(const TxFrame& frame, const FbmcConfig& cfg)
{
    cfg.validate();
    check_frame(frame, cfg);

    const int M = cfg.m_total;
    const int LM = cfg.overlap * M;
    TimeSignal out;
    out.samples.assign(static_cast<std::size_t>(cfg.signal_length(frame.num_symbols)), cplx{0.0, 0.0});
    const auto ph = phase_table(M);

    for (int k = 0; k < frame.num_symbols; ++k) {
        for (int m = 0; m < M; ++m) {
            const cplx d = frame.at(k, m);
            if (d == cplx{0.0, 0.0})
                continue;
            const auto& p = cfg.filter_for(m).coeffs;
            cplx* dst = out.samples.data() + static_cast<std::size_t>(k) * M;
            for (int n = 0; n < LM; ++n) {
                // phase refers to the absolute sample index kM + n
                dst[n] += d * p[static_cast<std::size_t>(n)]
                          * ph[static_cast<std::size_t>((static_cast<long long>(k) * M + n) * m % M)];
            }
        }
    }
    return out;
}

TimeSignal synthesize_fast(const TxFrame& frame, const FbmcConfig& cfg)
{
    cfg.validate();
    check_frame(frame, cfg);

    const int M = cfg.m_total;
    const int B = cfg.num_banks();
    const int LM = cfg.overlap * M;
    const int nfft = M / B;
    TimeSignal out;
    out.samples.assign(static_cast<std::size_t>(cfg.signal_length(frame.num_symbols)), cplx{0.0, 0.0});

    // bank filter with its subcarrier-offset phase folded in:
    // q_b[n] = p_b[n] e^{j2pi n b / M}
    std::vector<std::vector<cplx>> modulated(static_cast<std::size_t>(B));
    const auto ph = phase_table(M);
    for (int b = 0; b < B; ++b) {
        auto& q = modulated[static_cast<std::size_t>(b)];
        q.resize(static_cast<std::size_t>(LM));
        const auto& p = cfg.filters[static_cast<std::size_t>(b)].coeffs;
        for (int n = 0; n < LM; ++n)
            q[static_cast<std::size_t>(n)] =
                p[static_cast<std::size_t>(n)] * ph[static_cast<std::size_t>(static_cast<long long>(n) * b % M)];
    }

    std::vector<cplx> bank(static_cast<std::size_t>(nfft));
    for (int k = 0; k < frame.num_symbols; ++k) {
        cplx* dst = out.samples.data() + static_cast<std::size_t>(k) * M;
        for (int b = 0; b < B; ++b) {
            for (int s = 0; s < nfft; ++s)
                bank[static_cast<std::size_t>(s)] = frame.at(k, s * B + b);
            fft_inverse(bank); // sum_s D_s e^{+j2pi i s / nfft}, unnormalized

            // the base waveform has period nfft; the absolute-index phase of
            // q_b makes the k*M offset transparent because M | k*M
            const auto& q = modulated[static_cast<std::size_t>(b)];
            for (int n = 0; n < LM; ++n)
                dst[n] += bank[static_cast<std::size_t>(n % nfft)] * q[static_cast<std::size_t>(n)];
        }
    }
    return out;
}

std::vector<cplx> analyze(const TimeSignal& signal, const FbmcConfig& cfg, int num_symbols)
{
    cfg.validate();
    const int M = cfg.m_total;
    const int B = cfg.num_banks();
    const int LM = cfg.overlap * M;
    const int nfft = M / B;
    if (static_cast<int>(signal.samples.size()) < cfg.signal_length(num_symbols))
        throw std::invalid_argument("analyze: signal shorter than " + std::to_string(cfg.signal_length(num_symbols))
                                    + " samples for " + std::to_string(num_symbols) + " symbols");

    std::vector<cplx> grid(static_cast<std::size_t>(num_symbols) * M);
    const auto ph = phase_table(M);

    // window by p_b and the conjugate bank phase, fold to nfft, forward DFT
    std::vector<cplx> folded(static_cast<std::size_t>(nfft));
    for (int k = 0; k < num_symbols; ++k) {
        const cplx* src = signal.samples.data() + static_cast<std::size_t>(k) * M;
        for (int b = 0; b < B; ++b) {
            const auto& p = cfg.filters[static_cast<std::size_t>(b)].coeffs;
            std::fill(folded.begin(), folded.end(), cplx{0.0, 0.0});
            for (int n = 0; n < LM; ++n) {
                const long long abs_n = static_cast<long long>(k) * M + n;
                const cplx w = src[n] * p[static_cast<std::size_t>(n)]
                               * std::conj(ph[static_cast<std::size_t>(abs_n * b % M)]);
                folded[static_cast<std::size_t>(n % nfft)] += w;
            }
            fft_forward(folded);
            for (int s = 0; s < nfft; ++s)
                grid[static_cast<std::size_t>(k) * M + (s * B + b)] = folded[static_cast<std::size_t>(s)];
        }
    }
    return grid;
}

cplx transmux_response(const PrototypeFilter& tx, const PrototypeFilter& rx,
                       int m_total, int m, int m_prime, int lag)
{
    if (tx.length() != rx.length())
        throw std::invalid_argument("transmux_response: filter length mismatch");
    const int LM = tx.length();
    const int L = LM / m_total;
    if (lag < -L || lag > L)
        throw std::out_of_range("transmux_response: |lag| exceeds overlap factor");

    const int shift = lag * m_total;
    const int lo = std::max(0, shift);
    const int hi = std::min(LM, LM + shift);
    cplx acc{0.0, 0.0};
    for (int n = lo; n < hi; ++n) {
        const double a = 2.0 * M_PI * n * (m - m_prime) / m_total;
        // e^{j2pi (n - kM) m'/M} == e^{j2pi n m'/M} at integer-M lags
        acc += tx.coeffs[static_cast<std::size_t>(n)] * rx.coeffs[static_cast<std::size_t>(n - shift)]
               * cplx{std::cos(a), std::sin(a)};
    }
    return acc;
}

} // namespace fqam
