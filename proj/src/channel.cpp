// SPDX-License-Identifier: Apache-2.0

#include "fqam/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace fqam {

double mean_power(const TimeSignal& s)
{
    if (s.samples.empty())
        return 0.0;
    double acc = 0.0;
    for (const cplx& v : s.samples)
        acc += std::norm(v);
    return acc / static_cast<double>(s.samples.size());
}

double awgn_noise_variance(double measured_power, const AwgnSpec& spec)
{
    if (!(measured_power > 0.0))
        throw std::invalid_argument("awgn: measured power must be positive");
    if (spec.bits_per_group <= 0.0 || spec.mf < 1)
        throw std::invalid_argument("awgn: invalid rate accounting");
    const double ebn0 = std::pow(10.0, spec.ebn0_db / 10.0);
    return measured_power * spec.mf / (ebn0 * spec.bits_per_group);
}

void apply_awgn(TimeSignal& s, double noise_variance, Rng& rng)
{
    if (!(noise_variance >= 0.0))
        throw std::invalid_argument("awgn: negative noise variance");
    const double sigma = std::sqrt(noise_variance / 2.0);
    for (cplx& v : s.samples)
        v += cplx{sigma * rng.gaussian(), sigma * rng.gaussian()};
}

TdlSpec eva_channel(double sample_rate_hz, double speed_kmh, double carrier_hz)
{
    // 3GPP TS 36.104 Annex B, Extended Vehicular A
    static const double delays[] = {0, 30, 150, 310, 370, 710, 1090, 1730, 2510};
    static const double powers[] = {0.0, -1.5, -1.4, -3.6, -0.6, -9.1, -7.0, -12.0, -16.9};
    TdlSpec spec;
    for (int i = 0; i < 9; ++i)
        spec.taps.push_back({delays[i], powers[i]});
    spec.sample_rate_hz = sample_rate_hz;
    spec.doppler_hz = (speed_kmh / 3.6) / 299792458.0 * carrier_hz;
    return spec;
}

FadedSignal apply_tdl(const TimeSignal& s, const TdlSpec& spec, Rng& rng,
                      int num_symbols, int m_total, int overlap)
{
    if (spec.taps.empty())
        throw std::invalid_argument("tdl: no taps");
    const double ts = 1.0 / spec.sample_rate_hz;
    const int n_in = static_cast<int>(s.samples.size());
    const int n_taps = static_cast<int>(spec.taps.size());

    // quantize delays; normalize powers to unit total gain
    std::vector<int> delay_samp(static_cast<std::size_t>(n_taps));
    std::vector<double> amp(static_cast<std::size_t>(n_taps));
    double total = 0.0;
    int max_delay = 0;
    for (int i = 0; i < n_taps; ++i) {
        delay_samp[static_cast<std::size_t>(i)] =
            static_cast<int>(std::lround(spec.taps[static_cast<std::size_t>(i)].delay_ns * 1e-9 / ts));
        total += std::pow(10.0, spec.taps[static_cast<std::size_t>(i)].power_db / 10.0);
        max_delay = std::max(max_delay, delay_samp[static_cast<std::size_t>(i)]);
    }
    if (max_delay >= overlap * m_total)
        throw std::invalid_argument("tdl: delay spread exceeds the prototype length");
    for (int i = 0; i < n_taps; ++i)
        amp[static_cast<std::size_t>(i)] =
            std::sqrt(std::pow(10.0, spec.taps[static_cast<std::size_t>(i)].power_db / 10.0) / total);

    const bool fading = spec.doppler_hz > 0.0;
    const int n_sin = spec.num_sinusoids;
    const double inv_sqrt_n = fading ? 1.0 / std::sqrt(static_cast<double>(n_sin)) : 1.0;

    // per tap, per sinusoid: phase rotators advanced sample by sample
    std::vector<cplx> rot, step;
    if (fading) {
        rot.resize(static_cast<std::size_t>(n_taps) * n_sin);
        step.resize(static_cast<std::size_t>(n_taps) * n_sin);
        for (int i = 0; i < n_taps; ++i) {
            for (int q = 0; q < n_sin; ++q) {
                const double alpha = 2.0 * M_PI * rng.uniform01();
                const double phi = 2.0 * M_PI * rng.uniform01();
                const double omega = 2.0 * M_PI * spec.doppler_hz * std::cos(alpha) * ts;
                rot[static_cast<std::size_t>(i) * n_sin + q] = {std::cos(phi), std::sin(phi)};
                step[static_cast<std::size_t>(i) * n_sin + q] = {std::cos(omega), std::sin(omega)};
            }
        }
    }

    FadedSignal out;
    out.signal.sample_rate = s.sample_rate;
    out.signal.samples.assign(static_cast<std::size_t>(n_in + max_delay), cplx{0.0, 0.0});
    out.genie.num_symbols = num_symbols;
    out.genie.num_subcarriers = m_total;
    out.genie.h.assign(static_cast<std::size_t>(num_symbols) * m_total, cplx{0.0, 0.0});

    std::vector<cplx> h(static_cast<std::size_t>(n_taps));
    for (int i = 0; i < n_taps; ++i)
        h[static_cast<std::size_t>(i)] = amp[static_cast<std::size_t>(i)];

    // midpoint sample index of each symbol's pulse
    std::vector<long long> midpoints(static_cast<std::size_t>(num_symbols));
    for (int k = 0; k < num_symbols; ++k)
        midpoints[static_cast<std::size_t>(k)] = static_cast<long long>(k) * m_total + (overlap * m_total) / 2;
    int next_mid = 0;

    for (int n = 0; n < n_in + max_delay; ++n) {
        if (fading) {
            for (int i = 0; i < n_taps; ++i) {
                cplx acc{0.0, 0.0};
                for (int q = 0; q < n_sin; ++q) {
                    auto& r = rot[static_cast<std::size_t>(i) * n_sin + q];
                    acc += r;
                    r *= step[static_cast<std::size_t>(i) * n_sin + q];
                }
                h[static_cast<std::size_t>(i)] = amp[static_cast<std::size_t>(i)] * inv_sqrt_n * acc;
            }
        }
        if (next_mid < num_symbols && n == midpoints[static_cast<std::size_t>(next_mid)]) {
            // genie response: DFT of the frozen tap vector
            for (int m = 0; m < m_total; ++m) {
                cplx acc{0.0, 0.0};
                for (int i = 0; i < n_taps; ++i) {
                    const double a = -2.0 * M_PI * m * delay_samp[static_cast<std::size_t>(i)] / m_total;
                    acc += h[static_cast<std::size_t>(i)] * cplx{std::cos(a), std::sin(a)};
                }
                out.genie.h[static_cast<std::size_t>(next_mid) * m_total + m] = acc;
            }
            ++next_mid;
        }
        cplx y{0.0, 0.0};
        for (int i = 0; i < n_taps; ++i) {
            const int src = n - delay_samp[static_cast<std::size_t>(i)];
            if (src >= 0 && src < n_in)
                y += h[static_cast<std::size_t>(i)] * s.samples[static_cast<std::size_t>(src)];
        }
        out.signal.samples[static_cast<std::size_t>(n)] = y;
    }
    return out;
}

ZfReport zf_equalize(std::vector<cplx>& grid, const ChannelRealization& ch, double floor)
{
    if (grid.size() != ch.h.size())
        throw std::invalid_argument("zf: grid/realization size mismatch");
    ZfReport rep;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        cplx h = ch.h[i];
        const double mag = std::abs(h);
        if (mag < floor) {
            ++rep.floored;
            h = (mag > 0.0) ? h * (floor / mag) : cplx{floor, 0.0};
        }
        grid[i] /= h;
    }
    return rep;
}

} // namespace fqam
