// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace fqam {

std::uint64_t splitmix64(std::uint64_t& state);

/// Counter-based seed schedule: one master seed expands to independent
/// per-(stream, index) seeds, so any single trial can be reproduced in
/// isolation and totals are independent of how trials are distributed
/// across workers.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index);

/// Deterministic generator: mt19937_64 core, fixed 53-bit uniform mapping,
/// Box-Muller normals. Same seed => bit-identical sequence.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    double uniform01()
    {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    std::uint32_t below(std::uint32_t bound)
    {
        return static_cast<std::uint32_t>(eng_() % bound);
    }

    std::uint8_t bit() { return static_cast<std::uint8_t>(eng_() & 1u); }

    double gaussian();

    /// Circularly-symmetric complex normal with total variance `variance`.
    std::complex<double> cgaussian(double variance)
    {
        const double s = std::sqrt(variance / 2.0);
        return {s * gaussian(), s * gaussian()};
    }

private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace fqam
