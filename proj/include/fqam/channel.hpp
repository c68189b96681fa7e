// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "fqam/frame.hpp"
#include "fqam/rng.hpp"

namespace fqam {

/// Eb accounting is per FQAM group: one group sends bits_per_group bits
/// and unit symbol energy per multicarrier symbol, spread over mf
/// subcarrier slots of the time signal.
struct AwgnSpec {
    double ebn0_db = 0.0;
    double bits_per_group = 1.0; // R from rate()
    int mf = 1;
};

double mean_power(const TimeSignal& s);

/// Total complex noise variance: sigma^2 = P * mf / (10^(EbN0/10) * R_group).
double awgn_noise_variance(double measured_power, const AwgnSpec& spec);

void apply_awgn(TimeSignal& s, double noise_variance, Rng& rng);

struct TdlTap {
    double delay_ns = 0.0;
    double power_db = 0.0;
};

/// Tapped delay line with per-tap Rayleigh fading. Fading uses the
/// random-angle Jakes sum-of-sinusoids form
///   h_d(t) = sqrt(P_d / N) * sum_i exp(j(2pi f_D cos(a_i) t + phi_i)),
/// a_i, phi_i ~ U(0, 2pi) drawn per call, giving E[h(t)h*(t+tau)] =
/// P_d J0(2pi f_D tau). doppler_hz == 0 disables fading: static taps
/// h_d = sqrt(P_d). Tap powers are normalized to unit total gain and
/// delays quantized to the sample grid.
struct TdlSpec {
    std::vector<TdlTap> taps;
    double doppler_hz = 0.0;
    double sample_rate_hz = 1.0;
    int num_sinusoids = 16;
};

/// 3GPP Extended Vehicular A profile at the given sample rate;
/// f_D = (speed / c) * carrier.
TdlSpec eva_channel(double sample_rate_hz, double speed_kmh, double carrier_hz);

/// Genie per-symbol per-subcarrier frequency response (taps frozen at
/// each symbol midpoint).
struct ChannelRealization {
    int num_symbols = 0;
    int num_subcarriers = 0;
    std::vector<cplx> h; // K x M, symbol-major

    const cplx& at(int k, int m) const { return h[static_cast<std::size_t>(k) * num_subcarriers + m]; }
};

struct FadedSignal {
    TimeSignal signal; // input length + max delay samples
    ChannelRealization genie;
};

FadedSignal apply_tdl(const TimeSignal& s, const TdlSpec& spec, Rng& rng,
                      int num_symbols, int m_total, int overlap);

struct ZfReport {
    std::uint64_t floored = 0; // entries hit by the |H| magnitude floor
};

/// One-tap zero forcing: grid entry / H, with |H| floored at `floor`
/// (phase preserved).
ZfReport zf_equalize(std::vector<cplx>& grid, const ChannelRealization& ch, double floor = 1e-6);

} // namespace fqam
