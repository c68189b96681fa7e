// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fqam/prototype_filter.hpp"

using namespace fqam;

namespace {

// independent evaluation of the frequency-sampling coefficient set
struct PhydyasConsts {
    double h1, h2, h3;
    PhydyasConsts()
    {
        h2 = 1.0 / std::sqrt(2.0);
        const double s = 0.5 + h2;
        const double d = std::sqrt(2.0 - s * s);
        h1 = 0.5 * (s + d);
        h3 = 0.5 * (s - d);
    }
};

std::string temp_path(const char* name)
{
    return (std::filesystem::temp_directory_path() / name).string();
}

} // namespace

TEST_CASE("phydyas coefficient identities")
{
    PhydyasConsts c;
    CHECK(std::abs(c.h1 - 0.971960) < 5e-7); // published six-decimal values
    CHECK(std::abs(c.h3 - 0.235147) < 5e-7);
    CHECK(std::abs(c.h1 * c.h1 + c.h3 * c.h3 - 1.0) < 1e-6);
    CHECK(std::abs(c.h2 * c.h2 - 0.5) < 1e-6);
    CHECK(std::abs(-c.h1 + c.h2 - c.h3 + 0.5) < 1e-12);
}

TEST_CASE("phydyas M=4: endpoint zero and center peak")
{
    const auto f = phydyas(4, 4);
    REQUIRE(f.length() == 16);

    CHECK(std::abs(f.coeffs[0]) < 1e-12);

    // pre-normalization peak 1 + 2(H1+H2+H3) = 2 + 2*sqrt(2), energy 4*LM
    const double expected_peak = (2.0 + 2.0 * std::sqrt(2.0)) / std::sqrt(4.0 * 16.0);
    CHECK(f.coeffs[8] == doctest::Approx(expected_peak).epsilon(1e-9));
}

TEST_CASE("phydyas unit energy and linear phase")
{
    for (int m : {4, 16, 64, 100}) {
        const auto f = phydyas(m, 4);
        CHECK(std::abs(f.energy() - 1.0) < 1e-12);
        const int lm = f.length();
        for (int n = 1; n < lm; ++n)
            CHECK(std::abs(f.coeffs[static_cast<std::size_t>(n)]
                           - f.coeffs[static_cast<std::size_t>(lm - n)]) < 1e-12);
    }
}

TEST_CASE("phydyas is stateless across calls")
{
    const auto a = phydyas(32, 4);
    phydyas(100, 4);
    const auto b = phydyas(32, 4);
    CHECK(a.coeffs == b.coeffs);
}

TEST_CASE("phydyas rejects bad arguments")
{
    CHECK_THROWS_AS(phydyas(16, 2), std::invalid_argument);
    CHECK_THROWS_AS(phydyas(16, 3), std::invalid_argument);
    CHECK_THROWS_AS(phydyas(1, 4), std::invalid_argument);
}

TEST_CASE("block interleaver is an energy-preserving bijection")
{
    const auto f = phydyas(16, 4);
    const auto g = block_interleave(f);
    CHECK(std::abs(g.energy() - f.energy()) < 1e-12);
    const auto back = block_deinterleave(g);
    CHECK(back.coeffs == f.coeffs);

    PrototypeFilter flat;
    flat.num_subcarriers = 8;
    flat.overlap = 4;
    flat.coeffs.assign(32, 1.0);
    flat.label = "flat";
    const auto gi = block_interleave(flat);
    CHECK(gi.coeffs == flat.coeffs);
}

TEST_CASE("interleaving destroys the side-lobe structure")
{
    const auto plain = phydyas(64, 4);
    const auto mixed = block_interleave(plain);
    const double side_plain = first_sidelobe_db(filter_psd(plain, 8));
    const double side_mixed = first_sidelobe_db(filter_psd(mixed, 8));
    CHECK(side_mixed > side_plain);
    CHECK(side_mixed > -10.0); // grossly degraded, not a subtle shift
}

TEST_CASE("filter_psd basics")
{
    const auto f = phydyas(64, 4);
    const auto psd = filter_psd(f, 8);

    double peak = -1e9;
    for (double v : psd.power_db)
        peak = std::max(peak, v);
    CHECK(peak == doctest::Approx(0.0).epsilon(1e-12));

    for (std::size_t i = 1; i < psd.freq_over_df.size(); ++i)
        CHECK(psd.freq_over_df[i] > psd.freq_over_df[i - 1]);

    CHECK(max_beyond_db(psd, 2.0) < -60.0);

    // symmetry about 0 for real symmetric coefficients
    const std::size_t n = psd.power_db.size();
    for (std::size_t i = 1; i < n / 2; i += 97)
        CHECK(std::abs(psd.power_db[n / 2 + i] - psd.power_db[n / 2 - i]) < 1e-9);

    CHECK_THROWS_AS(filter_psd(f, 2), std::invalid_argument);
}

TEST_CASE("filter file round trip")
{
    const auto f = phydyas(64, 4);
    const auto path = temp_path("fqam_filter_roundtrip.txt");
    save_filter(f, path);
    const auto g = load_filter(path);
    REQUIRE(g.length() == f.length());
    CHECK(g.num_subcarriers == 64);
    CHECK(g.overlap == 4);
    for (int i = 0; i < f.length(); ++i)
        CHECK(std::abs(f.coeffs[static_cast<std::size_t>(i)] - g.coeffs[static_cast<std::size_t>(i)]) < 1e-12);
    std::filesystem::remove(path);
}

TEST_CASE("filter file errors")
{
    const auto path = temp_path("fqam_filter_bad.txt");

    {
        std::ofstream out(path);
        out << "M=4 L=4\n";
        for (int i = 0; i < 16; ++i)
            out << "0.0\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(load_filter(path)),
                         doctest::Contains("energy"), std::invalid_argument);

    {
        std::ofstream out(path);
        out << "M=4 L=4\n";
        for (int i = 0; i < 15; ++i)
            out << "1.0\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(load_filter(path)),
                         doctest::Contains("expected 16"), std::runtime_error);

    {
        std::ofstream out(path);
        out << "M4 L4\n1.0\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(load_filter(path)),
                         doctest::Contains("header"), std::runtime_error);

    {
        std::ofstream out(path);
        out << "M=4 L=4\n";
        for (int i = 0; i < 15; ++i)
            out << "1.0\n";
        out << "nan\n";
    }
    CHECK_THROWS_WITH_AS(static_cast<void>(load_filter(path)),
                         doctest::Contains("non-finite"), std::runtime_error);

    CHECK_THROWS_AS(static_cast<void>(load_filter(temp_path("missing_filter_file.txt"))),
                    std::runtime_error);
    std::filesystem::remove(path);
}
