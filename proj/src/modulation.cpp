// SPDX-License-Identifier: Apache-2.0

#include "fqam/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fqam {
namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

int ilog2(int v)
{
    int n = 0;
    while (v > 1) {
        v >>= 1;
        ++n;
    }
    return n;
}

// MSB-first bits -> integer
std::uint32_t bits_to_uint(std::span<const std::uint8_t> bits)
{
    std::uint32_t v = 0;
    for (std::uint8_t b : bits)
        v = (v << 1) | (b & 1u);
    return v;
}

void uint_to_bits(std::uint32_t v, std::span<std::uint8_t> bits)
{
    for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = static_cast<std::uint8_t>((v >> (bits.size() - 1 - i)) & 1u);
}

// Gray-mapped PAM: level index i carries codeword gray_encode(i),
// levels 2i - (nlevels-1).
int pam_index_from_bits(std::span<const std::uint8_t> bits)
{
    return static_cast<int>(gray_decode(bits_to_uint(bits)));
}

int pam_slice(double r, double scale, int nlevels)
{
    int i = static_cast<int>(std::lround((r / scale + (nlevels - 1)) / 2.0));
    return std::clamp(i, 0, nlevels - 1);
}

double qam_axis_scale(int mq)
{
    const int nlevels = static_cast<int>(std::lround(std::sqrt(static_cast<double>(mq))));
    return std::sqrt(3.0 / (2.0 * (static_cast<double>(nlevels) * nlevels - 1)));
}

double ask_scale(int mq)
{
    const int nlevels = static_cast<int>(std::lround(std::sqrt(static_cast<double>(mq))));
    return std::sqrt(3.0 / (static_cast<double>(nlevels) * nlevels - 1));
}

void check_tone(int tone, int mf)
{
    if (tone < 0 || tone >= mf)
        throw std::out_of_range("tone index " + std::to_string(tone) + " outside [0," + std::to_string(mf) + ")");
}

class BitReader {
public:
    BitReader(std::span<const std::uint8_t> bits) : bits_(bits) {}

    std::span<const std::uint8_t> take(std::size_t n)
    {
        if (pos_ + n > bits_.size())
            throw std::runtime_error("bit underrun: frame format needs more bits than supplied");
        auto s = bits_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    std::size_t consumed() const { return pos_; }

private:
    std::span<const std::uint8_t> bits_;
    std::size_t pos_ = 0;
};

} // namespace

cplx ask_rotation_value(AskRotation conv, int subcarrier, int symbol)
{
    int e = 0;
    switch (conv) {
    case AskRotation::None: return {1.0, 0.0};
    case AskRotation::QuarterTurnM: e = subcarrier; break;
    case AskRotation::QuarterTurnMK: e = subcarrier + symbol; break;
    }
    switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

int FqamConfig::tone_bits() const { return ilog2(mf); }
int FqamConfig::qam_bits() const { return ilog2(mq); }
int FqamConfig::ask_bits() const { return ilog2(mq) / 2; }

void FqamConfig::validate() const
{
    if (scheme == Scheme::PlainQam) {
        if (mf != 1)
            throw std::invalid_argument("PlainQam requires mf == 1");
    } else {
        if (mf < 2 || !is_pow2(mf))
            throw std::invalid_argument("mf must be a power of two >= 2");
    }
    if (mq < 4 || !is_pow2(mq) || (ilog2(mq) % 2) != 0)
        throw std::invalid_argument("mq must be an even power of two >= 4");
}

void GroupLayout::validate() const
{
    if (mf < 1 || m_total < mf || m_total % mf != 0)
        throw std::invalid_argument("m_total must be a positive multiple of mf");
}

std::uint32_t gray_encode(std::uint32_t v) { return v ^ (v >> 1); }

std::uint32_t gray_decode(std::uint32_t v)
{
    std::uint32_t b = 0;
    for (; v; v >>= 1)
        b ^= v;
    return b;
}

cplx map_qam(std::span<const std::uint8_t> bits, int mq)
{
    const int nb = ilog2(mq);
    if (static_cast<int>(bits.size()) != nb)
        throw std::invalid_argument("map_qam: expected " + std::to_string(nb) + " bits");
    const int nlevels = 1 << (nb / 2);
    const double scale = qam_axis_scale(mq);
    const int ii = pam_index_from_bits(bits.subspan(0, static_cast<std::size_t>(nb / 2)));
    const int qi = pam_index_from_bits(bits.subspan(static_cast<std::size_t>(nb / 2)));
    return {scale * (2 * ii - (nlevels - 1)), scale * (2 * qi - (nlevels - 1))};
}

void demap_qam(cplx value, int mq, std::span<std::uint8_t> bits)
{
    const int nb = ilog2(mq);
    if (static_cast<int>(bits.size()) != nb)
        throw std::invalid_argument("demap_qam: expected " + std::to_string(nb) + " bits");
    const int nlevels = 1 << (nb / 2);
    const double scale = qam_axis_scale(mq);
    const int ii = pam_slice(value.real(), scale, nlevels);
    const int qi = pam_slice(value.imag(), scale, nlevels);
    uint_to_bits(gray_encode(static_cast<std::uint32_t>(ii)), bits.subspan(0, static_cast<std::size_t>(nb / 2)));
    uint_to_bits(gray_encode(static_cast<std::uint32_t>(qi)), bits.subspan(static_cast<std::size_t>(nb / 2)));
}

double map_ask(std::span<const std::uint8_t> bits, int mq)
{
    const int nb = ilog2(mq) / 2;
    if (static_cast<int>(bits.size()) != nb)
        throw std::invalid_argument("map_ask: expected " + std::to_string(nb) + " bits");
    const int nlevels = 1 << nb;
    return ask_scale(mq) * (2 * pam_index_from_bits(bits) - (nlevels - 1));
}

void demap_ask(cplx value, GroupMode mode, cplx rotation, int mq, std::span<std::uint8_t> bits)
{
    const int nb = ilog2(mq) / 2;
    if (static_cast<int>(bits.size()) != nb)
        throw std::invalid_argument("demap_ask: expected " + std::to_string(nb) + " bits");
    const cplx z = value * std::conj(rotation);
    const double r = (mode == GroupMode::AskReal) ? z.real() : z.imag();
    const int i = pam_slice(r, ask_scale(mq), 1 << nb);
    uint_to_bits(gray_encode(static_cast<std::uint32_t>(i)), bits);
}

std::vector<GroupMode> classify_scheme1(std::span<const int> tones, int mf)
{
    std::vector<GroupMode> modes(tones.size(), GroupMode::Qam);
    for (std::size_t g = 0; g < tones.size(); ++g) {
        check_tone(tones[g], mf);
        if (tones[g] == 0)
            modes[g] = GroupMode::AskReal;
        else if (tones[g] == mf - 1)
            modes[g] = GroupMode::AskImag;
    }
    return modes;
}

std::vector<GroupMode> classify_scheme2(std::span<const int> tones, int mf)
{
    std::vector<GroupMode> modes(tones.size(), GroupMode::Qam);
    for (std::size_t g = 0; g < tones.size(); ++g)
        check_tone(tones[g], mf);
    for (std::size_t g = 0; g + 1 < tones.size(); ++g) {
        if (tones[g] == mf - 1 && tones[g + 1] == 0) {
            modes[g] = GroupMode::AskReal;
            modes[g + 1] = GroupMode::AskImag;
        }
    }
    return modes;
}

std::vector<GroupMode> classify(Scheme scheme, std::span<const int> tones, int mf)
{
    switch (scheme) {
    case Scheme::Scheme1: return classify_scheme1(tones, mf);
    case Scheme::Scheme2: return classify_scheme2(tones, mf);
    case Scheme::PlainFqam:
    case Scheme::PlainQam: {
        for (int t : tones)
            check_tone(t, scheme == Scheme::PlainQam ? 1 : mf);
        return std::vector<GroupMode>(tones.size(), GroupMode::Qam);
    }
    }
    throw std::logic_error("unknown scheme");
}

EncodeResult encode_frame(std::span<const std::uint8_t> bits, const FqamConfig& cfg,
                          const GroupLayout& layout, int num_symbols)
{
    cfg.validate();
    layout.validate();
    if (layout.mf != cfg.mf)
        throw std::invalid_argument("layout.mf does not match config.mf");

    const int G = layout.num_groups();
    const int M = layout.m_total;
    const int tb = cfg.tone_bits();
    const int qb = cfg.qam_bits();
    const int ab = cfg.ask_bits();

    EncodeResult res;
    res.frame.num_symbols = num_symbols;
    res.frame.num_subcarriers = M;
    res.frame.grid.assign(static_cast<std::size_t>(num_symbols) * M, cplx{0.0, 0.0});
    res.frame.tones.resize(static_cast<std::size_t>(num_symbols) * G);
    res.frame.modes.resize(static_cast<std::size_t>(num_symbols) * G);
    res.ask_count_by_group.assign(static_cast<std::size_t>(G), 0);

    BitReader reader(bits);
    std::vector<int> tones(static_cast<std::size_t>(G));

    for (int k = 0; k < num_symbols; ++k) {
        // pass 1: tone bits
        for (int g = 0; g < G; ++g)
            tones[static_cast<std::size_t>(g)] =
                tb == 0 ? 0 : static_cast<int>(gray_decode(bits_to_uint(reader.take(static_cast<std::size_t>(tb)))));

        // pass 2: classification over the full tone vector
        auto modes = classify(cfg.scheme, tones, cfg.mf);

        // pass 3: payload bits
        for (int g = 0; g < G; ++g) {
            const int m = layout.subcarrier(g, tones[static_cast<std::size_t>(g)]);
            cplx v;
            if (modes[static_cast<std::size_t>(g)] == GroupMode::Qam) {
                v = map_qam(reader.take(static_cast<std::size_t>(qb)), cfg.mq);
            } else {
                const double amp = map_ask(reader.take(static_cast<std::size_t>(ab)), cfg.mq);
                const cplx rot = ask_rotation_value(cfg.rotation, m, k);
                v = (modes[static_cast<std::size_t>(g)] == GroupMode::AskReal)
                        ? cplx{amp, 0.0} * rot
                        : cplx{0.0, amp} * rot;
                ++res.ask_count_by_group[static_cast<std::size_t>(g)];
            }
            res.frame.at(k, m) = v;
            res.frame.tones[static_cast<std::size_t>(k) * G + g] = tones[static_cast<std::size_t>(g)];
            res.frame.modes[static_cast<std::size_t>(k) * G + g] = modes[static_cast<std::size_t>(g)];
        }
    }
    res.bits_consumed = reader.consumed();
    return res;
}

DecodeResult decode_frame(std::span<const cplx> grid, const FqamConfig& cfg,
                          const GroupLayout& layout, int num_symbols)
{
    cfg.validate();
    layout.validate();
    const int G = layout.num_groups();
    const int M = layout.m_total;
    const int tb = cfg.tone_bits();
    const int qb = cfg.qam_bits();
    const int ab = cfg.ask_bits();
    if (grid.size() != static_cast<std::size_t>(num_symbols) * M)
        throw std::invalid_argument("decode_frame: grid size mismatch");

    DecodeResult res;
    res.tones.resize(static_cast<std::size_t>(num_symbols) * G);
    res.modes.resize(static_cast<std::size_t>(num_symbols) * G);
    res.bits.reserve(static_cast<std::size_t>(num_symbols) * G * (tb + qb));

    std::vector<int> tones(static_cast<std::size_t>(G));
    std::vector<std::uint8_t> scratch(static_cast<std::size_t>(std::max(tb, std::max(qb, ab))));

    for (int k = 0; k < num_symbols; ++k) {
        const cplx* row = grid.data() + static_cast<std::size_t>(k) * M;

        // pass 1: tone energy argmax per group
        for (int g = 0; g < G; ++g) {
            int best = 0;
            double best_e = -1.0;
            for (int f = 0; f < cfg.mf; ++f) {
                const double e = std::norm(row[layout.subcarrier(g, f)]);
                if (e > best_e) {
                    best_e = e;
                    best = f;
                }
            }
            tones[static_cast<std::size_t>(g)] = best;
            res.tones[static_cast<std::size_t>(k) * G + g] = best;
            if (tb > 0) {
                uint_to_bits(gray_encode(static_cast<std::uint32_t>(best)),
                             std::span<std::uint8_t>(scratch.data(), static_cast<std::size_t>(tb)));
                res.bits.insert(res.bits.end(), scratch.begin(), scratch.begin() + tb);
            }
        }

        // pass 2: re-run the classifier on detected tones, then demap
        auto modes = classify(cfg.scheme, tones, cfg.mf);
        for (int g = 0; g < G; ++g) {
            const int m = layout.subcarrier(g, tones[static_cast<std::size_t>(g)]);
            const cplx y = row[m];
            res.modes[static_cast<std::size_t>(k) * G + g] = modes[static_cast<std::size_t>(g)];
            if (modes[static_cast<std::size_t>(g)] == GroupMode::Qam) {
                demap_qam(y, cfg.mq, std::span<std::uint8_t>(scratch.data(), static_cast<std::size_t>(qb)));
                res.bits.insert(res.bits.end(), scratch.begin(), scratch.begin() + qb);
            } else {
                demap_ask(y, modes[static_cast<std::size_t>(g)], ask_rotation_value(cfg.rotation, m, k),
                          cfg.mq, std::span<std::uint8_t>(scratch.data(), static_cast<std::size_t>(ab)));
                res.bits.insert(res.bits.end(), scratch.begin(), scratch.begin() + ab);
            }
        }
    }
    return res;
}

std::uint64_t count_mode_mismatches(const TxFrame& tx, const DecodeResult& rx)
{
    std::uint64_t n = 0;
    const std::size_t count = std::min(tx.modes.size(), rx.modes.size());
    for (std::size_t i = 0; i < count; ++i)
        n += tx.modes[i] != rx.modes[i];
    return n;
}

RateReport rate(const FqamConfig& cfg)
{
    cfg.validate();
    const double lmf = cfg.tone_bits();
    const double lmq = cfg.qam_bits();
    const double mf = cfg.mf;

    RateReport r;
    switch (cfg.scheme) {
    case Scheme::Scheme1:
        r.r_bits_per_symbol = lmf + (mf - 1.0) / mf * lmq;
        r.r_loss_bits = lmq / mf;
        break;
    case Scheme::Scheme2:
        r.r_bits_per_symbol = lmf + (mf * mf - 1.0) / (mf * mf) * lmq;
        r.r_loss_bits = lmq / (mf * mf);
        break;
    case Scheme::PlainFqam:
    case Scheme::PlainQam:
        r.r_bits_per_symbol = lmf + lmq;
        r.r_loss_bits = 0.0;
        break;
    }
    r.r_loss_fraction = r.r_loss_bits / (lmf + lmq);
    return r;
}

} // namespace fqam
