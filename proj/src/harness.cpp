// SPDX-License-Identifier: Apache-2.0

#include "fqam/harness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace fqam {

using json = nlohmann::json;

namespace {

constexpr int kBatchFrames = 16; // fixed batch size: totals independent of worker count

std::uint64_t fnv1a64(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

Scheme scheme_from_name(const std::string& name, const std::string& path)
{
    if (name == "scheme1") return Scheme::Scheme1;
    if (name == "scheme2") return Scheme::Scheme2;
    if (name == "plain_fqam") return Scheme::PlainFqam;
    if (name == "plain_qam") return Scheme::PlainQam;
    throw ConfigError(path + ": unknown scheme '" + name + "' (scheme1|scheme2|plain_fqam|plain_qam)");
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> keys)
{
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : keys)
            if (item.key() == k)
                known = true;
        if (!known)
            throw ConfigError(path + "." + item.key() + ": unknown field");
    }
}

template <typename T>
void read_field(const json& obj, const std::string& path, const char* key, T& out)
{
    if (!obj.contains(key))
        return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(path + "." + key + ": wrong type");
    }
}

std::string sanitize_label(const std::string& label)
{
    std::string out;
    for (char c : label)
        out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_';
    return out;
}

struct FrameStats {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    std::uint64_t mode_mismatches = 0;
    std::uint64_t zf_floored = 0;
};

// One seeded Monte Carlo trial: bits -> encode -> synthesize -> channel
// -> analyze -> (ZF) -> blind decode -> group-aligned error count.
FrameStats simulate_frame(const FbmcConfig& wf, const FqamConfig& mod, const GroupLayout& layout,
                          int num_symbols, double snr_db, bool fading, const TdlSpec& tdl,
                          double formula_rate, Rng& rng)
{
    const int G = layout.num_groups();
    const int tb = mod.tone_bits();
    const int qb = mod.qam_bits();
    const int ab = mod.ask_bits();

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(num_symbols) * G * (tb + qb));
    for (auto& b : bits)
        b = rng.bit();

    const auto enc = encode_frame(bits, mod, layout, num_symbols);
    TimeSignal sig = synthesize_fast(enc.frame, wf);
    sig.sample_rate = tdl.sample_rate_hz;

    const double p_meas = mean_power(sig);
    const double sigma2 = awgn_noise_variance(p_meas, {snr_db, formula_rate, mod.mf});

    FrameStats stats;
    std::vector<cplx> grid;
    if (fading) {
        auto faded = apply_tdl(sig, tdl, rng, num_symbols, wf.m_total, wf.overlap);
        apply_awgn(faded.signal, sigma2, rng);
        grid = analyze(faded.signal, wf, num_symbols);
        stats.zf_floored = zf_equalize(grid, faded.genie).floored;
    } else {
        apply_awgn(sig, sigma2, rng);
        grid = analyze(sig, wf, num_symbols);
    }

    const auto dec = decode_frame(grid, mod, layout, num_symbols);
    stats.mode_mismatches = count_mode_mismatches(enc.frame, dec);

    // group-aligned comparison: tone segments are fixed-length, payload
    // segment lengths follow each side's own mode decisions; length
    // mismatches count as errors against the transmitted bits
    std::size_t tx_pos = 0, rx_pos = 0;
    for (int k = 0; k < num_symbols; ++k) {
        const std::size_t tone_seg = static_cast<std::size_t>(G) * tb;
        for (std::size_t i = 0; i < tone_seg; ++i)
            stats.errors += (bits[tx_pos + i] ^ dec.bits[rx_pos + i]) & 1u;
        stats.bits += tone_seg;
        tx_pos += tone_seg;
        rx_pos += tone_seg;
        for (int g = 0; g < G; ++g) {
            const std::size_t idx = static_cast<std::size_t>(k) * G + g;
            const std::size_t tx_len =
                enc.frame.modes[idx] == GroupMode::Qam ? static_cast<std::size_t>(qb) : static_cast<std::size_t>(ab);
            const std::size_t rx_len =
                dec.modes[idx] == GroupMode::Qam ? static_cast<std::size_t>(qb) : static_cast<std::size_t>(ab);
            const std::size_t common = std::min(tx_len, rx_len);
            for (std::size_t i = 0; i < common; ++i)
                stats.errors += (bits[tx_pos + i] ^ dec.bits[rx_pos + i]) & 1u;
            stats.errors += std::max(tx_len, rx_len) - common;
            stats.bits += tx_len;
            tx_pos += tx_len;
            rx_pos += rx_len;
        }
    }
    return stats;
}

void write_provenance(std::ofstream& out, const ExperimentConfig& cfg)
{
    out << "# fqamsim v1.0\n";
    out << "# config_hash=" << cfg.config_hash << "\n";
}

std::ofstream open_csv(const std::string& path)
{
    std::ofstream out(path, std::ios::binary); // LF endings everywhere
    if (!out)
        throw std::runtime_error("cannot write " + path);
    return out;
}

std::string fmt(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

} // namespace

const char* scheme_name(Scheme s)
{
    switch (s) {
    case Scheme::Scheme1: return "scheme1";
    case Scheme::Scheme2: return "scheme2";
    case Scheme::PlainFqam: return "plain_fqam";
    case Scheme::PlainQam: return "plain_qam";
    }
    return "?";
}

std::string ExperimentConfig::canonical_json() const
{
    json j;
    j["waveform"] = {{"m", m}, {"l", l}, {"b", b}, {"filters", filter_specs}};
    j["modulation"] = {{"mf", mf}, {"mq", mq}, {"scheme", scheme_name(scheme)}};
    j["channel"] = {{"type", channel_type},
                    {"speed_kmh", speed_kmh},
                    {"carrier_ghz", carrier_ghz},
                    {"subcarrier_spacing_hz", subcarrier_spacing_hz}};
    j["sweep"] = {{"snr_db", snr_db},         {"min_bits", min_bits},
                  {"max_bits", max_bits},     {"target_errors", target_errors},
                  {"symbols_per_frame", symbols_per_frame}, {"papr_symbols", papr_symbols},
                  {"rate_symbols", rate_symbols}};
    j["outputs"] = {{"dir", out_dir}};
    return j.dump();
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw ConfigError("config: top level must be an object");
    reject_unknown(j, "config", {"waveform", "modulation", "channel", "sweep", "outputs"});

    ExperimentConfig cfg;
    if (j.contains("waveform")) {
        const auto& w = j.at("waveform");
        reject_unknown(w, "waveform", {"m", "l", "b", "filters"});
        read_field(w, "waveform", "m", cfg.m);
        read_field(w, "waveform", "l", cfg.l);
        read_field(w, "waveform", "b", cfg.b);
        read_field(w, "waveform", "filters", cfg.filter_specs);
    }
    if (j.contains("modulation")) {
        const auto& mo = j.at("modulation");
        reject_unknown(mo, "modulation", {"mf", "mq", "scheme"});
        read_field(mo, "modulation", "mf", cfg.mf);
        read_field(mo, "modulation", "mq", cfg.mq);
        std::string s = scheme_name(cfg.scheme);
        read_field(mo, "modulation", "scheme", s);
        cfg.scheme = scheme_from_name(s, "modulation.scheme");
    }
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        reject_unknown(c, "channel", {"type", "speed_kmh", "carrier_ghz", "subcarrier_spacing_hz"});
        read_field(c, "channel", "type", cfg.channel_type);
        read_field(c, "channel", "speed_kmh", cfg.speed_kmh);
        read_field(c, "channel", "carrier_ghz", cfg.carrier_ghz);
        read_field(c, "channel", "subcarrier_spacing_hz", cfg.subcarrier_spacing_hz);
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        reject_unknown(s, "sweep",
                       {"snr_db", "min_bits", "max_bits", "target_errors", "symbols_per_frame",
                        "papr_symbols", "rate_symbols"});
        read_field(s, "sweep", "snr_db", cfg.snr_db);
        read_field(s, "sweep", "min_bits", cfg.min_bits);
        read_field(s, "sweep", "max_bits", cfg.max_bits);
        read_field(s, "sweep", "target_errors", cfg.target_errors);
        read_field(s, "sweep", "symbols_per_frame", cfg.symbols_per_frame);
        read_field(s, "sweep", "papr_symbols", cfg.papr_symbols);
        read_field(s, "sweep", "rate_symbols", cfg.rate_symbols);
    }
    if (j.contains("outputs")) {
        const auto& o = j.at("outputs");
        reject_unknown(o, "outputs", {"dir"});
        read_field(o, "outputs", "dir", cfg.out_dir);
    }

    cfg.validate();
    cfg.config_hash = hex64(fnv1a64(cfg.canonical_json()));
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

void ExperimentConfig::validate() const
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };

    if (m < 2) fail("waveform.m: must be >= 2");
    if (l < 2) fail("waveform.l: must be >= 2");
    if (b < 1 || b > 2) fail("waveform.b: must be 1 or 2");
    if (m % b != 0) fail("waveform.m: must be divisible by waveform.b");
    if (static_cast<int>(filter_specs.size()) != b)
        fail("waveform.filters: need exactly one filter per bank (" + std::to_string(b) + ")");
    if (mf < 1) fail("modulation.mf: must be >= 1");
    if (m % mf != 0) fail("waveform.m: must be divisible by modulation.mf");
    try {
        FqamConfig probe{mf, mq, scheme, AskRotation::None};
        probe.validate();
    } catch (const std::exception& e) {
        fail(std::string("modulation: ") + e.what());
    }
    if (channel_type != "awgn" && channel_type != "eva")
        fail("channel.type: must be 'awgn' or 'eva'");
    if (subcarrier_spacing_hz <= 0) fail("channel.subcarrier_spacing_hz: must be positive");
    if (channel_type == "eva" && speed_kmh < 0) fail("channel.speed_kmh: must be >= 0");
    if (snr_db.empty()) fail("sweep.snr_db: need at least one point");
    if (min_bits > max_bits) fail("sweep.min_bits: must be <= sweep.max_bits");
    if (target_errors < 1) fail("sweep.target_errors: must be >= 1");
    if (symbols_per_frame < 1) fail("sweep.symbols_per_frame: must be >= 1");
    if (papr_symbols < 1) fail("sweep.papr_symbols: must be >= 1");
    if (rate_symbols < 1) fail("sweep.rate_symbols: must be >= 1");
}

FbmcConfig ExperimentConfig::make_waveform() const
{
    FbmcConfig wf;
    wf.m_total = m;
    wf.overlap = l;
    for (std::size_t i = 0; i < filter_specs.size(); ++i) {
        const std::string& spec = filter_specs[i];
        try {
            if (spec == "phydyas") {
                wf.filters.push_back(phydyas(m, l));
            } else if (spec == "phydyas_interleaved") {
                wf.filters.push_back(block_interleave(phydyas(m, l)));
            } else {
                auto f = load_filter(spec);
                if (f.num_subcarriers != m || f.overlap != l)
                    throw std::runtime_error("file declares M=" + std::to_string(f.num_subcarriers)
                                             + " L=" + std::to_string(f.overlap) + ", config wants M="
                                             + std::to_string(m) + " L=" + std::to_string(l));
                wf.filters.push_back(std::move(f));
            }
        } catch (const std::exception& e) {
            throw ConfigError("waveform.filters[" + std::to_string(i) + "]: " + e.what());
        }
    }
    wf.validate();
    return wf;
}

FqamConfig ExperimentConfig::make_modulation() const
{
    return FqamConfig{mf, mq, scheme, AskRotation::None};
}

GroupLayout ExperimentConfig::make_layout() const
{
    return GroupLayout{m, mf};
}

SweepResult run_ber_sweep(const ExperimentConfig& cfg, std::uint64_t seed, int workers)
{
    cfg.validate();
    const auto wf = cfg.make_waveform();
    const auto mod = cfg.make_modulation();
    const auto layout = cfg.make_layout();
    const double formula_rate = rate(mod).r_bits_per_symbol;
    const bool fading = cfg.channel_type == "eva";
    TdlSpec tdl;
    tdl.sample_rate_hz = cfg.sample_rate_hz();
    if (fading)
        tdl = eva_channel(cfg.sample_rate_hz(), cfg.speed_kmh, cfg.carrier_ghz * 1e9);
    workers = std::max(1, workers);

    SweepResult result;
    for (std::size_t point = 0; point < cfg.snr_db.size(); ++point) {
        const double snr = cfg.snr_db[point];
        BerRecord rec;
        rec.snr_db = snr;
        std::uint64_t mismatches = 0, floored = 0;
        std::uint64_t frame_index = 0;

        while (true) {
            std::vector<FrameStats> batch(kBatchFrames);
            std::atomic<int> next{0};
            auto work = [&]() {
                for (;;) {
                    const int j = next.fetch_add(1);
                    if (j >= kBatchFrames)
                        return;
                    Rng rng(derive_seed(seed, point, frame_index + static_cast<std::uint64_t>(j)));
                    batch[static_cast<std::size_t>(j)] =
                        simulate_frame(wf, mod, layout, cfg.symbols_per_frame, snr, fading, tdl,
                                       formula_rate, rng);
                }
            };
            if (workers == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < workers; ++t)
                    pool.emplace_back(work);
                for (auto& t : pool)
                    t.join();
            }
            for (const auto& st : batch) {
                rec.bits_sent += st.bits;
                rec.bit_errors += st.errors;
                mismatches += st.mode_mismatches;
                floored += st.zf_floored;
            }
            frame_index += kBatchFrames;

            const bool enough = rec.bits_sent >= cfg.min_bits
                                && rec.bit_errors >= static_cast<std::uint64_t>(cfg.target_errors);
            if (enough || rec.bits_sent >= cfg.max_bits)
                break;
        }
        result.records.push_back(rec);
        result.mode_mismatches.push_back(mismatches);
        result.zf_floored.push_back(floored);
    }
    return result;
}

std::vector<SelfSirRow> run_self_sir_table(const ExperimentConfig& cfg)
{
    cfg.validate();
    const auto wf = cfg.make_waveform();
    const auto mod = cfg.make_modulation();
    const int G = cfg.m / std::max(cfg.mf, 1);
    const int mid_group = G / 2;

    std::vector<SelfSirRow> rows;
    auto add = [&](const std::string& label, const std::string& mode_name, const SelfSirReport& rep) {
        rows.push_back({label, mode_name, rep.p_signal, rep.p_interference, rep.gamma_db});
    };

    const std::string label = cfg.b == 1 ? wf.filters[0].label : wf.filters[0].label + "+" + wf.filters[1].label;
    const int ref_mid = cfg.m / 2;
    add(label, "all_active", self_sir(wf, mod, ref_mid, SirMode::AllActive));

    if (cfg.mf >= 2 && cfg.scheme != Scheme::PlainQam) {
        const int ref_non_edge = mid_group * cfg.mf + std::min(1, cfg.mf - 1);
        add(label, "fqam_average", self_sir(wf, mod, ref_non_edge, SirMode::FqamAverage));
        add(label, "fqam_worst_case", self_sir(wf, mod, ref_non_edge, SirMode::FqamWorstCase));
        if (cfg.mf >= 4)
            add(label, "fqam_worst_case_non_edge",
                self_sir(wf, mod, ref_non_edge, SirMode::FqamWorstCase, {true}));
        const int ref_edge = mid_group * cfg.mf + cfg.mf - 1;
        add(label, "projected_ask", self_sir(wf, mod, ref_edge, SirMode::ProjectedAsk));
    }
    return rows;
}

std::vector<RateRow> run_rate_report(const ExperimentConfig& cfg, std::uint64_t seed)
{
    cfg.validate();

    std::vector<std::pair<int, int>> pairs{{cfg.mf, cfg.mq}, {4, 4}, {8, 4}};
    std::vector<RateRow> rows;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        const auto [pmf, pmq] = pairs[pi];
        bool dup = false;
        for (std::size_t q = 0; q < pi; ++q)
            dup = dup || pairs[q] == pairs[pi];
        if (dup || pmf < 2)
            continue;
        for (Scheme s : {Scheme::Scheme1, Scheme::Scheme2}) {
            FqamConfig mod{pmf, pmq, s, AskRotation::None};
            const auto rep = rate(mod);

            // measure on a group count comparable to the configured band
            const int groups = std::max(8, cfg.m / pmf);
            GroupLayout layout{groups * pmf, pmf};
            Rng rng(derive_seed(seed, 31, (static_cast<std::uint64_t>(pmf) << 32) | static_cast<std::uint64_t>(s)));
            const int chunk = 500;
            std::uint64_t bits = 0, group_symbols = 0;
            std::vector<std::uint8_t> pool(static_cast<std::size_t>(chunk) * groups
                                           * (mod.tone_bits() + mod.qam_bits()));
            for (int done = 0; done < cfg.rate_symbols; done += chunk) {
                const int k = std::min(chunk, cfg.rate_symbols - done);
                for (auto& bb : pool)
                    bb = rng.bit();
                auto enc = encode_frame(pool, mod, layout, k);
                bits += enc.bits_consumed;
                group_symbols += static_cast<std::uint64_t>(k) * groups;
            }
            rows.push_back({pmf, pmq, s, rep.r_bits_per_symbol, empirical_rate(bits, group_symbols),
                            rep.r_loss_fraction});
        }
    }
    return rows;
}

PaprExport run_papr_measurement(const ExperimentConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    const auto wf = cfg.make_waveform();

    auto measure = [&](const FqamConfig& mod, std::uint64_t stream) {
        const GroupLayout layout{cfg.m, mod.mf};
        const int per_frame = 200;
        std::vector<double> samples;
        samples.reserve(static_cast<std::size_t>(cfg.papr_symbols));
        std::uint64_t frame = 0;
        while (static_cast<int>(samples.size()) < cfg.papr_symbols) {
            Rng rng(derive_seed(seed, stream, frame++));
            std::vector<std::uint8_t> bits(static_cast<std::size_t>(per_frame) * layout.num_groups()
                                           * (mod.tone_bits() + mod.qam_bits()));
            for (auto& b : bits)
                b = rng.bit();
            auto enc = encode_frame(bits, mod, layout, per_frame);
            const auto sig = synthesize_fast(enc.frame, wf);
            auto p = papr_per_symbol_db(sig, cfg.m);
            p.resize(std::min<std::size_t>(p.size(), static_cast<std::size_t>(per_frame)));
            samples.insert(samples.end(), p.begin(), p.end());
        }
        samples.resize(static_cast<std::size_t>(cfg.papr_symbols));
        return papr_ccdf_from_samples(samples, 1e-3);
    };

    PaprExport out;
    out.fqam = measure(cfg.make_modulation(), 11);
    out.dense = measure(FqamConfig{1, 16, Scheme::PlainQam, AskRotation::None}, 12);
    return out;
}

void write_ber_csv(const std::string& path, const ExperimentConfig& cfg,
                   std::uint64_t seed, const SweepResult& result)
{
    auto out = open_csv(path);
    write_provenance(out, cfg);
    out << "# seed=" << seed << "\n";
    out << "# noise_convention=sigma2=P_meas*MF/(10^(EbN0/10)*R_group), Eb per FQAM group, "
           "R_group=" << fmt(rate(cfg.make_modulation()).r_bits_per_symbol)
        << ", MF=" << cfg.mf << ", P_meas over the clean frame\n";
    out << "# channel=" << cfg.channel_type << " scheme=" << scheme_name(cfg.scheme) << "\n";
    out << "snr_db,bits,errors,ber\n";
    for (const auto& r : result.records)
        out << fmt(r.snr_db) << "," << r.bits_sent << "," << r.bit_errors << ","
            << fmt(r.ber()) << "\n";
}

void write_self_sir_csv(const std::string& path, const ExperimentConfig& cfg,
                        const std::vector<SelfSirRow>& rows)
{
    auto out = open_csv(path);
    write_provenance(out, cfg);
    out << "label,mode,p_s,p_i,gamma_db\n";
    for (const auto& r : rows)
        out << r.label << "," << r.mode << "," << fmt(r.p_s) << "," << fmt(r.p_i) << ","
            << fmt(r.gamma_db) << "\n";
}

void write_rate_csv(const std::string& path, const ExperimentConfig& cfg,
                    std::uint64_t seed, const std::vector<RateRow>& rows)
{
    auto out = open_csv(path);
    write_provenance(out, cfg);
    out << "# seed=" << seed << "\n";
    out << "mf,mq,scheme,r_formula,r_empirical,loss_fraction\n";
    for (const auto& r : rows)
        out << r.mf << "," << r.mq << "," << scheme_name(r.scheme) << "," << fmt(r.r_formula)
            << "," << fmt(r.r_empirical) << "," << fmt(r.loss_fraction) << "\n";
}

void write_psd_csv(const std::string& path, const ExperimentConfig& cfg, const PsdCurve& curve)
{
    auto out = open_csv(path);
    write_provenance(out, cfg);
    out << "freq_over_df,power_db\n";
    for (std::size_t i = 0; i < curve.freq_over_df.size(); ++i)
        out << fmt(curve.freq_over_df[i]) << "," << fmt(curve.power_db[i]) << "\n";
}

void write_papr_csv(const std::string& path, const ExperimentConfig& cfg,
                    std::uint64_t seed, const PaprCcdf& curve)
{
    auto out = open_csv(path);
    write_provenance(out, cfg);
    out << "# seed=" << seed << "\n";
    out << "papr_db,ccdf\n";
    for (std::size_t i = 0; i < curve.thresholds_db.size(); ++i)
        out << fmt(curve.thresholds_db[i]) << "," << fmt(curve.exceed_prob[i]) << "\n";
}

namespace {

std::string out_path(const ExperimentConfig& cfg, const std::string& name)
{
    std::filesystem::create_directories(cfg.out_dir);
    return (std::filesystem::path(cfg.out_dir) / name).string();
}

} // namespace

std::vector<std::string> drive_ber(const ExperimentConfig& cfg, std::uint64_t seed, int workers)
{
    const auto result = run_ber_sweep(cfg, seed, workers);
    const auto path = out_path(cfg, "ber.csv");
    write_ber_csv(path, cfg, seed, result);
    return {path};
}

std::vector<std::string> drive_selfsir(const ExperimentConfig& cfg)
{
    const auto rows = run_self_sir_table(cfg);
    const auto path = out_path(cfg, "selfsir.csv");
    write_self_sir_csv(path, cfg, rows);
    return {path};
}

std::vector<std::string> drive_psd(const ExperimentConfig& cfg, std::uint64_t seed)
{
    cfg.validate();
    const auto wf = cfg.make_waveform();
    std::vector<std::string> written;
    for (const auto& f : wf.filters) {
        const auto curve = filter_psd(f, 16);
        const auto path = out_path(cfg, "psd_filter_" + sanitize_label(f.label) + ".csv");
        write_psd_csv(path, cfg, curve);
        written.push_back(path);
    }

    // Welch PSD of a random frame of the configured modulation
    const auto mod = cfg.make_modulation();
    const GroupLayout layout = cfg.make_layout();
    const int K = 96;
    Rng rng(derive_seed(seed, 21, 0));
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(K) * layout.num_groups()
                                   * (mod.tone_bits() + mod.qam_bits()));
    for (auto& b : bits)
        b = rng.bit();
    const auto enc = encode_frame(bits, mod, layout, K);
    const auto sig = synthesize_fast(enc.frame, wf);
    const auto curve = signal_psd(sig, 8 * cfg.m, 0.5, cfg.m);
    const auto path = out_path(cfg, "psd_signal.csv");
    write_psd_csv(path, cfg, curve);
    written.push_back(path);
    return written;
}

std::vector<std::string> drive_papr(const ExperimentConfig& cfg, std::uint64_t seed)
{
    const auto res = run_papr_measurement(cfg, seed);
    const auto p1 = out_path(cfg, "papr_fqam.csv");
    const auto p2 = out_path(cfg, "papr_dense_qam.csv");
    write_papr_csv(p1, cfg, seed, res.fqam);
    write_papr_csv(p2, cfg, seed, res.dense);
    return {p1, p2};
}

std::vector<std::string> drive_rate(const ExperimentConfig& cfg, std::uint64_t seed)
{
    const auto rows = run_rate_report(cfg, seed);
    const auto path = out_path(cfg, "rate.csv");
    write_rate_csv(path, cfg, seed, rows);
    return {path};
}

} // namespace fqam
