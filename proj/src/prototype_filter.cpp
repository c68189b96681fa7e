// SPDX-License-Identifier: Apache-2.0

#include "fqam/prototype_filter.hpp"

#include "fqam/fft.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fqam {

double PrototypeFilter::energy() const
{
    return std::inner_product(coeffs.begin(), coeffs.end(), coeffs.begin(), 0.0);
}

PrototypeFilter normalized(PrototypeFilter f)
{
    double e = f.energy();
    if (!(e > 0.0) || !std::isfinite(e))
        throw std::invalid_argument("filter '" + f.label + "': zero or non-finite energy");
    double s = 1.0 / std::sqrt(e);
    for (double& c : f.coeffs)
        c *= s;
    return f;
}

PrototypeFilter phydyas(int num_subcarriers, int overlap)
{
    if (overlap != 4)
        throw std::invalid_argument("phydyas: unsupported overlap factor " + std::to_string(overlap));
    if (num_subcarriers < 2)
        throw std::invalid_argument("phydyas: need at least 2 subcarriers");

    // Frequency-sampling coefficients. H2 = 1/sqrt(2); H1 and H3 solve
    // H1 + H3 = 1/2 + H2 and H1^2 + H3^2 = 1, which makes p[0] vanish
    // exactly and gives H1 = 0.971960, H3 = 0.235147 to six decimals.
    const double h2 = 1.0 / std::sqrt(2.0);
    const double s = 0.5 + h2;
    const double d = std::sqrt(2.0 - s * s);
    const double h1 = 0.5 * (s + d);
    const double h3 = 0.5 * (s - d);

    const int len = overlap * num_subcarriers;
    PrototypeFilter f;
    f.overlap = overlap;
    f.num_subcarriers = num_subcarriers;
    f.label = "phydyas";
    f.coeffs.resize(static_cast<std::size_t>(len));
    const double w = 2.0 * M_PI / len;
    for (int n = 0; n < len; ++n) {
        f.coeffs[static_cast<std::size_t>(n)] =
            1.0 - 2.0 * h1 * std::cos(w * n) + 2.0 * h2 * std::cos(2.0 * w * n)
            - 2.0 * h3 * std::cos(3.0 * w * n);
    }
    return normalized(std::move(f));
}

PrototypeFilter block_interleave(const PrototypeFilter& f)
{
    const int L = f.overlap;
    const int M = f.num_subcarriers;
    PrototypeFilter out = f;
    out.label = f.label + "_interleaved";
    // out[c*L + r] = in[r*M + c]
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < M; ++c)
            out.coeffs[static_cast<std::size_t>(c) * L + r] =
                f.coeffs[static_cast<std::size_t>(r) * M + c];
    return out;
}

PrototypeFilter block_deinterleave(const PrototypeFilter& f)
{
    const int L = f.overlap;
    const int M = f.num_subcarriers;
    PrototypeFilter out = f;
    out.label = f.label + "_deinterleaved";
    for (int r = 0; r < L; ++r)
        for (int c = 0; c < M; ++c)
            out.coeffs[static_cast<std::size_t>(r) * M + c] =
                f.coeffs[static_cast<std::size_t>(c) * L + r];
    return out;
}

PrototypeFilter load_filter(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open filter file: " + path);

    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error(path + ": empty file");

    int m = 0, l = 0;
    if (std::sscanf(header.c_str(), "M=%d L=%d", &m, &l) != 2)
        throw std::runtime_error(path + ": malformed header '" + header + "' (expected \"M=<int> L=<int>\")");
    if (m < 2 || l < 2)
        throw std::runtime_error(path + ": invalid dimensions M=" + std::to_string(m) + " L=" + std::to_string(l));

    PrototypeFilter f;
    f.num_subcarriers = m;
    f.overlap = l;
    f.label = path;
    const std::size_t expect = static_cast<std::size_t>(m) * static_cast<std::size_t>(l);
    f.coeffs.reserve(expect);

    std::string line;
    while (std::getline(in, line)) {
        // allow trailing blank lines
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        double v = 0.0;
        if (!(ls >> v))
            throw std::runtime_error(path + ": bad coefficient line '" + line + "'");
        if (!std::isfinite(v))
            throw std::runtime_error(path + ": non-finite coefficient");
        f.coeffs.push_back(v);
    }
    if (f.coeffs.size() != expect)
        throw std::runtime_error(path + ": expected " + std::to_string(expect) + " coefficients, got "
                                 + std::to_string(f.coeffs.size()));
    return normalized(std::move(f));
}

void save_filter(const PrototypeFilter& f, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write filter file: " + path);
    out << "M=" << f.num_subcarriers << " L=" << f.overlap << "\n";
    char buf[48];
    for (double c : f.coeffs) {
        std::snprintf(buf, sizeof buf, "%.17g\n", c);
        out << buf;
    }
}

PsdCurve filter_psd(const PrototypeFilter& f, int oversample)
{
    if (oversample < 4)
        throw std::invalid_argument("filter_psd: oversample must be >= 4");

    const int n = oversample * f.length();
    std::vector<cplx> spec(static_cast<std::size_t>(n));
    for (int i = 0; i < f.length(); ++i)
        spec[static_cast<std::size_t>(i)] = f.coeffs[static_cast<std::size_t>(i)];
    fft_forward(spec);

    PsdCurve c;
    c.freq_over_df.resize(static_cast<std::size_t>(n));
    c.power_db.resize(static_cast<std::size_t>(n));
    double peak = 0.0;
    for (auto& v : spec)
        peak = std::max(peak, std::norm(v));
    const int half = n / 2;
    for (int i = 0; i < n; ++i) {
        const int src = (i + half) % n; // fftshift
        c.freq_over_df[static_cast<std::size_t>(i)] =
            static_cast<double>(i - half) / n * f.num_subcarriers;
        const double mag = std::norm(spec[static_cast<std::size_t>(src)]) / peak;
        c.power_db[static_cast<std::size_t>(i)] = 10.0 * std::log10(std::max(mag, 1e-300));
    }
    return c;
}

double first_sidelobe_db(const PsdCurve& c)
{
    const auto& db = c.power_db;
    std::size_t i = static_cast<std::size_t>(
        std::max_element(db.begin(), db.end()) - db.begin());
    // walk down the main lobe, then take the max of what remains
    while (i + 1 < db.size() && db[i + 1] <= db[i])
        ++i;
    double best = -1e300;
    for (; i < db.size(); ++i)
        best = std::max(best, db[i]);
    return best;
}

double max_beyond_db(const PsdCurve& c, double freq_over_df)
{
    double best = -1e300;
    for (std::size_t i = 0; i < c.power_db.size(); ++i)
        if (std::abs(c.freq_over_df[i]) >= freq_over_df)
            best = std::max(best, c.power_db[i]);
    return best;
}

} // namespace fqam
