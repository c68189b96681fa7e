// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqam/channel.hpp"
#include "fqam/metrics.hpp"

namespace fqam {

/// Configuration problem (schema, types, cross-field constraints, filter
/// files). The message carries the offending field path.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One experiment: waveform geometry, modulation, channel, sweep control,
/// output directory. Parsed from a JSON document; every field has a
/// default mirroring the reference setup (M=100, L=4, (4,4), Scheme 1).
struct ExperimentConfig {
    // waveform
    int m = 100;
    int l = 4;
    int b = 1;
    std::vector<std::string> filter_specs{"phydyas"}; // names or file paths, one per bank

    // modulation
    int mf = 4;
    int mq = 4;
    Scheme scheme = Scheme::Scheme1;

    // channel
    std::string channel_type = "awgn"; // "awgn" | "eva"
    double speed_kmh = 50.0;
    double carrier_ghz = 2.0;
    double subcarrier_spacing_hz = 15000.0;

    // sweep
    std::vector<double> snr_db{0, 2, 4, 6, 8, 10};
    std::uint64_t min_bits = 100000;
    std::uint64_t max_bits = 2000000;
    int target_errors = 100;
    int symbols_per_frame = 128;
    int papr_symbols = 200000;
    int rate_symbols = 20000;

    // outputs
    std::string out_dir = ".";

    std::string config_hash; // FNV-1a over the canonical JSON of the effective config

    static ExperimentConfig from_json_text(const std::string& text);
    static ExperimentConfig from_file(const std::string& path);

    void validate() const;          // throws ConfigError with field paths
    std::string canonical_json() const;

    double sample_rate_hz() const { return m * subcarrier_spacing_hz; }
    FbmcConfig make_waveform() const;   // resolves filter specs
    FqamConfig make_modulation() const;
    GroupLayout make_layout() const;
};

struct SweepResult {
    std::vector<BerRecord> records;              // one per SNR point
    std::vector<std::uint64_t> mode_mismatches;  // diagnostic, per point
    std::vector<std::uint64_t> zf_floored;       // diagnostic, per point
};

/// Monte Carlo BER sweep. Frames are seeded by (master seed, point, frame
/// index) and processed in fixed-size batches, so totals are identical for
/// any worker count. Per point the loop stops once min_bits are simulated
/// and target_errors collected, or at max_bits.
SweepResult run_ber_sweep(const ExperimentConfig& cfg, std::uint64_t seed, int workers);

struct SelfSirRow {
    std::string label;
    std::string mode;
    double p_s = 0.0;
    double p_i = 0.0;
    double gamma_db = 0.0;
};

std::vector<SelfSirRow> run_self_sir_table(const ExperimentConfig& cfg);

struct RateRow {
    int mf = 0;
    int mq = 0;
    Scheme scheme = Scheme::Scheme1;
    double r_formula = 0.0;
    double r_empirical = 0.0;
    double loss_fraction = 0.0;
};

/// Formula rates next to seeded Monte Carlo measurements, for the
/// configured (mf, mq) plus the (4,4) and (8,4) reference pairs.
std::vector<RateRow> run_rate_report(const ExperimentConfig& cfg, std::uint64_t seed);

struct PaprExport {
    PaprCcdf fqam;
    PaprCcdf dense; // dense 16-QAM reference grid
};

PaprExport run_papr_measurement(const ExperimentConfig& cfg, std::uint64_t seed);

// CSV writers; every file carries '#' provenance lines (version, config
// hash, seed, conventions) above the column header. LF endings,
// '.' decimal separator.
void write_ber_csv(const std::string& path, const ExperimentConfig& cfg,
                   std::uint64_t seed, const SweepResult& result);
void write_self_sir_csv(const std::string& path, const ExperimentConfig& cfg,
                        const std::vector<SelfSirRow>& rows);
void write_rate_csv(const std::string& path, const ExperimentConfig& cfg,
                    std::uint64_t seed, const std::vector<RateRow>& rows);
void write_psd_csv(const std::string& path, const ExperimentConfig& cfg,
                   const PsdCurve& curve);
void write_papr_csv(const std::string& path, const ExperimentConfig& cfg,
                    std::uint64_t seed, const PaprCcdf& curve);

// Subcommand drivers used by the CLI: run, write CSVs under out_dir,
// return the written paths.
std::vector<std::string> drive_ber(const ExperimentConfig&, std::uint64_t seed, int workers);
std::vector<std::string> drive_selfsir(const ExperimentConfig&);
std::vector<std::string> drive_psd(const ExperimentConfig&, std::uint64_t seed);
std::vector<std::string> drive_papr(const ExperimentConfig&, std::uint64_t seed);
std::vector<std::string> drive_rate(const ExperimentConfig&, std::uint64_t seed);

const char* scheme_name(Scheme s);

} // namespace fqam
