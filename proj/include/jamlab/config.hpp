#pragma once

#include "jamlab/detector.hpp"
#include "jamlab/types.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace jamlab {

// Validation failure tied to a specific config field; the message is
// "[section] key: problem" so callers can surface the failing field.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string field, const std::string& problem)
        : std::runtime_error(field + ": " + problem), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

// Minimal INI document: [section] headers, key = value lines, '#' or ';'
// comments. Duplicate keys within a section are rejected.
class IniDoc {
  public:
    static IniDoc parse(const std::string& text);

    bool has(const std::string& sec, const std::string& key) const;
    bool has_section(const std::string& sec) const;
    const std::string& get(const std::string& sec, const std::string& key) const;
    std::string get_or(const std::string& sec, const std::string& key,
                       const std::string& fallback) const;
    const std::vector<std::string>& sections() const { return order_; }
    std::vector<std::string> keys(const std::string& sec) const;

  private:
    std::map<std::string, std::map<std::string, std::string>> data_;
    std::map<std::string, std::vector<std::string>> key_order_;
    std::vector<std::string> order_;
};

enum class ExperimentKind {
    ser_vs_sjr,
    ser_vs_rho,
    pmd_vs_l,
    pmd_vs_njr,
    pmd_theory_vs_sim,
    dft_illustration,
};

enum class SymbolPolicy { uniform, fixed, a_min, a_max };

struct JammerConfig {
    enum class Kind { none, band, tone } kind = Kind::none;
    // Band parameters.
    double rho = 1.0;
    double nu_j = 0.0;
    // Tone parameters. Empty u means "fresh random integer tones each trial";
    // random_phi means phases are redrawn each trial.
    int v = 1;
    std::vector<double> u;
    bool random_u = false;
    std::vector<double> phi;
    bool random_phi = true;
    // Power, resolved to a single linear variance when not swept.
    double sigma_j_sq = 1.0;
    bool power_from_sweep = false;

    ToneJammerSpec tone_spec(double sigma_j_sq_now, const std::vector<double>& u_now,
                             const std::vector<double>& phi_now) const {
        return ToneJammerSpec{u_now, phi_now, sigma_j_sq_now};
    }
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::ser_vs_sjr;
    LoRaParams lora = LoRaParams::from_sf(7);
    long long trials = 0;
    std::uint64_t seed = 1;
    SymbolPolicy symbol_policy = SymbolPolicy::uniform;
    int symbol_value = 0;
    bool has_symbol = false;  // dft_illustration: include the modulated frame
    double snr_db = 0.0;
    bool noiseless = false;  // dft_illustration without a [channel] section
    JammerConfig jammer;
    DetectorConfig detector;
    bool noise_known = true;
    int noise_est_frames = 0;
    std::string sweep_axis;  // implied by kind; empty for dft_illustration
    std::vector<double> sweep_values;
    long long theory_draws = 200000;
};

const char* kind_name(ExperimentKind k);
const char* policy_name(SymbolPolicy p);
const char* elimination_name(EliminationPolicy p);

// Parse + validate an experiment document. Throws ConfigError with the
// failing field on any violation.
ExperimentSpec parse_experiment(const std::string& text);
ExperimentSpec parse_experiment_file(const std::string& path);

// Resolved spec as a canonical INI document (used by validate and manifests).
std::string dump_experiment(const ExperimentSpec& spec);

} // namespace jamlab
