// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fqam/frame.hpp"

namespace fqam {

enum class Scheme { Scheme1, Scheme2, PlainFqam, PlainQam };

/// Rotation applied to ASK payloads (and removed by the demapper).
/// Identity keeps collision-pair leakage orthogonal at every symbol lag
/// for a symmetric prototype; the quarter-turn variants are kept for the
/// measured comparison in the self-SIR tests.
enum class AskRotation { None, QuarterTurnM, QuarterTurnMK };

cplx ask_rotation_value(AskRotation conv, int subcarrier, int symbol);

struct FqamConfig {
    int mf = 4; // tones per group, power of two; 1 only for PlainQam
    int mq = 4; // QAM order, even power of two >= 4
    Scheme scheme = Scheme::Scheme1;
    AskRotation rotation = AskRotation::None;

    int tone_bits() const; // log2 mf
    int qam_bits() const;  // log2 mq
    int ask_bits() const;  // log2(mq)/2
    void validate() const; // throws std::invalid_argument
};

/// Partition of M subcarriers into M/mf groups of mf consecutive tones.
struct GroupLayout {
    int m_total = 0;
    int mf = 1;

    int num_groups() const { return m_total / mf; }
    int subcarrier(int group, int tone) const { return group * mf + tone; }
    int local_index(int m) const { return m % mf; }
    void validate() const;
};

std::uint32_t gray_encode(std::uint32_t v);
std::uint32_t gray_decode(std::uint32_t v);

/// Gray-mapped square QAM, unit average energy over the alphabet.
cplx map_qam(std::span<const std::uint8_t> bits, int mq);
void demap_qam(cplx value, int mq, std::span<std::uint8_t> bits);

/// Gray-mapped sqrt(mq)-level amplitude, unit average energy.
double map_ask(std::span<const std::uint8_t> bits, int mq);
/// De-rotates by conj(rotation), projects onto the mode's axis, slices.
void demap_ask(cplx value, GroupMode mode, cplx rotation, int mq,
               std::span<std::uint8_t> bits);

/// Edge tones always fall back to ASK: tone 0 -> real axis,
/// tone mf-1 -> imaginary axis.
std::vector<GroupMode> classify_scheme1(std::span<const int> tones, int mf);

/// ASK only on actual collisions (tone mf-1 next to tone 0 in the adjacent
/// group); the lower-frequency member takes the real axis, the higher the
/// imaginary one. Spectrum-boundary outer edges never collide.
std::vector<GroupMode> classify_scheme2(std::span<const int> tones, int mf);

std::vector<GroupMode> classify(Scheme scheme, std::span<const int> tones, int mf);

struct EncodeResult {
    TxFrame frame;
    std::size_t bits_consumed = 0;
    std::vector<std::uint64_t> ask_count_by_group; // ASK group-symbols per group index
};

/// Deterministic frame format, per multicarrier symbol: tone bits for all
/// groups in ascending order, then payload bits in ascending order
/// (qam_bits for QAM groups, ask_bits for ASK groups).
/// Throws std::runtime_error on bit underrun.
EncodeResult encode_frame(std::span<const std::uint8_t> bits, const FqamConfig& cfg,
                          const GroupLayout& layout, int num_symbols);

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    std::vector<int> tones;        // detected, K*G
    std::vector<GroupMode> modes;  // re-inferred from detected tones, K*G
};

/// Blind two-pass detection: per-group tone by energy argmax, then the
/// scheme classifier re-run on detected tones to infer payload modes.
DecodeResult decode_frame(std::span<const cplx> grid, const FqamConfig& cfg,
                          const GroupLayout& layout, int num_symbols);

/// Group-symbols whose inferred mode differs from the transmitted one.
std::uint64_t count_mode_mismatches(const TxFrame& tx, const DecodeResult& rx);

struct RateReport {
    double r_bits_per_symbol = 0;
    double r_loss_bits = 0;
    double r_loss_fraction = 0;
};

RateReport rate(const FqamConfig& cfg);

} // namespace fqam
