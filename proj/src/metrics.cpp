// SPDX-License-Identifier: Apache-2.0

#include "fqam/metrics.hpp"

#include "fqam/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fqam {
namespace {

double proj_on_axis(cplx z, GroupMode axis)
{
    return axis == GroupMode::AskReal ? z.real() : z.imag();
}

cplx axis_factor(GroupMode mode)
{
    return mode == GroupMode::AskImag ? cplx{0.0, 1.0} : cplx{1.0, 0.0};
}

GroupMode edge_mode(int local, int mf)
{
    if (local == 0)
        return GroupMode::AskReal;
    if (local == mf - 1)
        return GroupMode::AskImag;
    throw std::invalid_argument("ProjectedAsk: reference subcarrier is not an edge tone");
}

} // namespace

const char* to_string(SirMode mode)
{
    switch (mode) {
    case SirMode::AllActive: return "all_active";
    case SirMode::FqamAverage: return "fqam_average";
    case SirMode::FqamWorstCase: return "fqam_worst_case";
    case SirMode::ProjectedAsk: return "projected_ask";
    }
    return "?";
}

SelfSirReport self_sir(const FbmcConfig& wf, const FqamConfig& mod, int ref, SirMode mode,
                       const SelfSirOptions& opt)
{
    wf.validate();
    const int M = wf.m_total;
    const int L = wf.overlap;
    if (ref < 0 || ref >= M)
        throw std::out_of_range("self_sir: reference subcarrier out of range");
    const int mf = mod.mf;
    if (mode != SirMode::AllActive && (mf < 2 || M % mf != 0))
        throw std::invalid_argument("self_sir: FQAM modes need a valid group partition");

    const auto& rx = wf.filter_for(ref);
    auto coupling = [&](int m, int lag) {
        return transmux_response(wf.filter_for(m), rx, M, m, ref, lag);
    };

    const double p_s = std::norm(coupling(ref, 0));

    // per-subcarrier leakage power summed over lags
    auto leak_power = [&](int m) {
        double acc = 0.0;
        for (int k = -L + 1; k <= L; ++k)
            acc += std::norm(coupling(m, k));
        if (m == ref)
            acc -= p_s;
        return acc;
    };

    std::vector<int> tone_set;
    const int lo = opt.non_edge_only ? 1 : 0;
    const int hi = opt.non_edge_only ? mf - 2 : mf - 1;
    for (int f = lo; f <= hi; ++f)
        tone_set.push_back(f);
    if (tone_set.empty())
        throw std::invalid_argument("self_sir: no allowed tones (mf too small for non-edge restriction)");

    double p_i = 0.0;
    const int ref_group = ref / std::max(mf, 1);

    switch (mode) {
    case SirMode::AllActive:
        for (int m = 0; m < M; ++m)
            p_i += leak_power(m);
        break;

    case SirMode::FqamAverage: {
        p_i = leak_power(ref); // own ISI, tone certainly active
        const double w = 1.0 / static_cast<double>(tone_set.size());
        for (int g = 0; g < M / mf; ++g) {
            if (g == ref_group)
                continue;
            for (int f : tone_set)
                p_i += w * leak_power(g * mf + f);
        }
        break;
    }

    case SirMode::FqamWorstCase: {
        p_i = leak_power(ref);
        for (int g = 0; g < M / mf; ++g) {
            if (g == ref_group)
                continue;
            double worst = 0.0;
            for (int f : tone_set)
                worst = std::max(worst, leak_power(g * mf + f));
            p_i += worst;
        }
        break;
    }

    case SirMode::ProjectedAsk: {
        // reference = one member of a colliding edge pair; detection
        // statistic is the axis projection of conj(rot_ref) * y
        const int local = ref % mf;
        const GroupMode ref_mode = edge_mode(local, mf);
        const cplx rot_ref = ask_rotation_value(mod.rotation, ref, 0);
        const int partner = (local == 0) ? ref - 1 : ref + 1;
        if (partner < 0 || partner >= M)
            throw std::invalid_argument("ProjectedAsk: reference has no colliding neighbor in band");
        const GroupMode partner_mode = edge_mode(partner % mf, mf);

        // own-channel ISI: same axis, same subcarrier, lags != 0
        for (int k = -L + 1; k <= L; ++k) {
            if (k == 0)
                continue;
            const cplx rot_i = ask_rotation_value(mod.rotation, ref, -k);
            const cplx z = std::conj(rot_ref) * coupling(ref, k) * axis_factor(ref_mode) * rot_i;
            const double c = proj_on_axis(z, ref_mode);
            p_i += c * c;
        }
        // colliding partner, all lags, projected
        for (int k = -L + 1; k <= L; ++k) {
            const cplx rot_i = ask_rotation_value(mod.rotation, partner, -k);
            const cplx z = std::conj(rot_ref) * coupling(partner, k) * axis_factor(partner_mode) * rot_i;
            const double c = proj_on_axis(z, ref_mode);
            p_i += c * c;
        }
        // remaining groups: worst-case non-edge QAM, unprojected (conservative)
        const int partner_group = partner / mf;
        std::vector<int> non_edge;
        for (int f = 1; f <= mf - 2; ++f)
            non_edge.push_back(f);
        for (int g = 0; g < M / mf; ++g) {
            if (g == ref_group || g == partner_group)
                continue;
            double worst = 0.0;
            for (int f : non_edge)
                worst = std::max(worst, leak_power(g * mf + f));
            p_i += worst;
        }
        break;
    }
    }

    SelfSirReport rep;
    rep.mode = mode;
    rep.p_signal = p_s;
    rep.p_interference = p_i;
    rep.gamma_db = p_i > 0.0 ? 10.0 * std::log10(p_s / p_i)
                             : std::numeric_limits<double>::infinity();
    return rep;
}

PsdCurve signal_psd(const TimeSignal& s, int segment_len, double overlap_fraction,
                    int num_subcarriers)
{
    const int n = static_cast<int>(s.samples.size());
    if (segment_len < 2 || n < 2 * segment_len)
        throw std::invalid_argument("signal_psd: signal too short for the segment length");
    if (overlap_fraction < 0.0 || overlap_fraction >= 1.0)
        throw std::invalid_argument("signal_psd: overlap fraction must be in [0,1)");

    const int hop = std::max(1, static_cast<int>(std::lround(segment_len * (1.0 - overlap_fraction))));
    std::vector<double> window(static_cast<std::size_t>(segment_len));
    for (int i = 0; i < segment_len; ++i)
        window[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / segment_len));

    std::vector<double> acc(static_cast<std::size_t>(segment_len), 0.0);
    std::vector<cplx> seg(static_cast<std::size_t>(segment_len));
    int count = 0;
    for (int start = 0; start + segment_len <= n; start += hop) {
        for (int i = 0; i < segment_len; ++i)
            seg[static_cast<std::size_t>(i)] =
                s.samples[static_cast<std::size_t>(start + i)] * window[static_cast<std::size_t>(i)];
        fft_forward(seg);
        for (int i = 0; i < segment_len; ++i)
            acc[static_cast<std::size_t>(i)] += std::norm(seg[static_cast<std::size_t>(i)]);
        ++count;
    }

    PsdCurve c;
    c.freq_over_df.resize(static_cast<std::size_t>(segment_len));
    c.power_db.resize(static_cast<std::size_t>(segment_len));
    double peak = 0.0;
    for (double v : acc)
        peak = std::max(peak, v);
    const int half = segment_len / 2;
    for (int i = 0; i < segment_len; ++i) {
        const int src = (i + half) % segment_len;
        c.freq_over_df[static_cast<std::size_t>(i)] =
            static_cast<double>(i - half) / segment_len * num_subcarriers;
        c.power_db[static_cast<std::size_t>(i)] =
            10.0 * std::log10(std::max(acc[static_cast<std::size_t>(src)] / peak, 1e-300));
    }
    return c;
}

std::vector<double> papr_per_symbol_db(const TimeSignal& s, int symbol_len)
{
    if (symbol_len < 1)
        throw std::invalid_argument("papr: symbol length must be positive");
    const int n_sym = static_cast<int>(s.samples.size()) / symbol_len;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n_sym));
    for (int k = 0; k < n_sym; ++k) {
        double peak = 0.0, mean = 0.0;
        for (int i = 0; i < symbol_len; ++i) {
            const double v = std::norm(s.samples[static_cast<std::size_t>(k) * symbol_len + i]);
            peak = std::max(peak, v);
            mean += v;
        }
        mean /= symbol_len;
        out.push_back(mean > 0.0 ? 10.0 * std::log10(peak / mean) : 0.0);
    }
    return out;
}

PaprCcdf papr_ccdf_from_samples(std::span<const double> papr_db, double min_depth)
{
    if (papr_db.empty())
        throw std::invalid_argument("papr_ccdf: no symbols");
    if (static_cast<double>(papr_db.size()) * min_depth < 10.0)
        throw std::invalid_argument("papr_ccdf: too few symbols for the requested CCDF depth");

    const double top = *std::max_element(papr_db.begin(), papr_db.end());
    const int n_thr = static_cast<int>(std::ceil(top / 0.1)) + 1;
    PaprCcdf c;
    c.thresholds_db.resize(static_cast<std::size_t>(n_thr));
    c.exceed_prob.resize(static_cast<std::size_t>(n_thr));

    std::vector<double> sorted(papr_db.begin(), papr_db.end());
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n_thr; ++i) {
        const double thr = 0.1 * i;
        c.thresholds_db[static_cast<std::size_t>(i)] = thr;
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), thr);
        c.exceed_prob[static_cast<std::size_t>(i)] =
            static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
    }
    return c;
}

PaprCcdf papr_ccdf(const TimeSignal& s, int symbol_len, double min_depth)
{
    const auto samples = papr_per_symbol_db(s, symbol_len);
    return papr_ccdf_from_samples(samples, min_depth);
}

double ccdf_at(const PaprCcdf& c, double threshold_db)
{
    if (c.thresholds_db.empty() || threshold_db < c.thresholds_db.front())
        return 1.0;
    auto it = std::upper_bound(c.thresholds_db.begin(), c.thresholds_db.end(), threshold_db);
    const std::size_t i = static_cast<std::size_t>(it - c.thresholds_db.begin()) - 1;
    return c.exceed_prob[i];
}

double threshold_at_ccdf(const PaprCcdf& c, double prob)
{
    for (std::size_t i = 0; i < c.thresholds_db.size(); ++i)
        if (c.exceed_prob[i] <= prob)
            return c.thresholds_db[i];
    return c.thresholds_db.empty() ? 0.0 : c.thresholds_db.back();
}

BerRecord count_errors(std::span<const std::uint8_t> tx, std::span<const std::uint8_t> rx)
{
    if (tx.size() != rx.size())
        throw std::invalid_argument("count_errors: stream length mismatch");
    BerRecord rec;
    rec.bits_sent = tx.size();
    for (std::size_t i = 0; i < tx.size(); ++i)
        rec.bit_errors += (tx[i] ^ rx[i]) & 1u;
    return rec;
}

double empirical_rate(std::uint64_t total_bits, std::uint64_t total_group_symbols)
{
    if (total_group_symbols == 0)
        throw std::invalid_argument("empirical_rate: no group-symbols");
    return static_cast<double>(total_bits) / static_cast<double>(total_group_symbols);
}

} // namespace fqam
