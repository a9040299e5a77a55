// Command-line front end. Talks to the library exclusively through the C API.
#include "jamlab.h"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

int exit_code_for(jl_status st) {
    switch (st) {
        case JL_OK: return 0;
        case JL_ERR_VALIDATION:
        case JL_ERR_INVALID_ARGUMENT:
        case JL_ERR_DOMAIN: return kExitValidation;
        default: return kExitRuntime;
    }
}

int report_failure(jl_status st) {
    std::cerr << "error: " << jl_last_error() << "\n";
    return exit_code_for(st);
}

std::string default_out_dir() {
    const char* env = std::getenv("JAMLAB_OUT");
    return env && *env ? env : "out";
}

// Kind of a validated config, read off the resolved dump.
std::string resolved_kind(const std::string& resolved) {
    std::istringstream in(resolved);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind("kind = ", 0) == 0) return line.substr(7);
    return "";
}

int run_config(const std::string& config, const std::string& out_dir, long long seed,
               long long fast, int threads, const std::string& expect_prefix) {
    std::vector<char> resolved(8192);
    jl_status st = jl_experiment_validate_file(config.c_str(), resolved.data(), resolved.size());
    if (st != JL_OK) return report_failure(st);
    const std::string kind = resolved_kind(resolved.data());
    if (kind.rfind(expect_prefix, 0) != 0) {
        std::cerr << "error: [experiment] kind: '" << kind << "' does not belong to this subcommand\n";
        return kExitValidation;
    }
    std::vector<char> csv(4096);
    st = jl_experiment_run_file(config.c_str(), out_dir.c_str(), seed, fast, threads,
                                csv.data(), csv.size());
    if (st != JL_OK) return report_failure(st);
    std::cout << "wrote " << csv.data() << "\n";
    return 0;
}

// Prints the [summary] block of the manifest next to a CSV, if present.
void print_summary(const std::string& csv_path) {
    const std::string stem = csv_path.substr(0, csv_path.rfind(".csv"));
    std::ifstream man(stem + ".manifest.ini");
    if (!man) return;
    std::string line;
    bool in_summary = false;
    while (std::getline(man, line)) {
        if (line == "[summary]") {
            in_summary = true;
            continue;
        }
        if (in_summary) {
            if (!line.empty() && line.front() == '[') break;
            if (!line.empty()) std::cout << line << "\n";
        }
    }
}

std::string join(const std::vector<double>& v) {
    std::ostringstream out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", v[i]);
        out << buf;
    }
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LoRa chirp-spread-spectrum jamming laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(jl_version()));

    std::string config;
    std::string out_dir = default_out_dir();
    long long seed = -1;
    long long fast = 1;
    int threads = 1;

    auto add_run_opts = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config, "experiment config file");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory (default $JAMLAB_OUT or ./out)");
        cmd->add_option("--seed", seed, "override the config seed");
        cmd->add_option("--fast", fast, "divide trial budgets by this factor")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* ser = app.add_subcommand("ser", "symbol-error-rate sweeps");
    add_run_opts(ser, true);

    auto* pmd = app.add_subcommand("pmd", "jammer miss-detection sweeps");
    add_run_opts(pmd, true);

    auto* spectrum = app.add_subcommand("spectrum", "dechirped jammer spectrum table");
    add_run_opts(spectrum, false);
    int sp_sf = 7;
    std::vector<double> sp_u, sp_phi;
    double sp_sigma_j_sq = 0.0, sp_sjr_db = 0.0;
    int sp_symbol = -1;
    spectrum->add_option("--sf", sp_sf, "spreading factor");
    spectrum->add_option("--u", sp_u, "tone frequencies (cycles per frame)");
    spectrum->add_option("--phi", sp_phi, "tone phases (radians)");
    auto* opt_sjsq = spectrum->add_option("--sigma-j-sq", sp_sigma_j_sq, "jammer power");
    auto* opt_sjr = spectrum->add_option("--sjr-db", sp_sjr_db, "jammer power as SJR in dB");
    spectrum->add_option("--symbol", sp_symbol, "include the chirp for this symbol");

    auto* demo = app.add_subcommand("detect-demo", "one-frame detector walkthrough");
    int dd_sf = 7, dd_symbol = 0, dd_l = 4, dd_elim = 3;
    double dd_snr_db = 0.0, dd_njr_db = -10.0, dd_rho = 1.0, dd_nu_j = 0.0;
    double dd_pfa = 1e-3, dd_pfa_saa = 1e-3;
    std::string dd_jammer = "band", dd_hyp = "h1";
    std::vector<double> dd_u, dd_phi;
    long long dd_seed = 1;
    demo->add_option("--sf", dd_sf, "spreading factor");
    demo->add_option("--snr-db", dd_snr_db, "signal-to-noise ratio in dB");
    demo->add_option("--njr-db", dd_njr_db, "noise-to-jammer ratio in dB");
    demo->add_option("--jammer", dd_jammer, "band | tone | none");
    demo->add_option("--rho", dd_rho, "band jammer bandwidth fraction");
    demo->add_option("--nu-j", dd_nu_j, "band jammer center frequency");
    demo->add_option("--u", dd_u, "tone frequencies");
    demo->add_option("--phi", dd_phi, "tone phases");
    demo->add_option("--hypothesis", dd_hyp, "h0 | h1 | h2 | h3");
    demo->add_option("--symbol", dd_symbol, "transmitted symbol for h1/h2");
    demo->add_option("--l", dd_l, "bins in the detection sum");
    demo->add_option("--pfa", dd_pfa, "per-bin elimination false-alarm rate");
    demo->add_option("--pfa-saa", dd_pfa_saa, "frame-level false-alarm target");
    demo->add_option("--elimination", dd_elim, "0 none, 1 peak, 2 threshold, 3 both");
    demo->add_option("--seed", dd_seed, "noise/jammer realization seed");

    auto* validate = app.add_subcommand("validate", "check a config and print the resolved form");
    validate->add_option("--config", config, "experiment config file")->required();

    CLI11_PARSE(app, argc, argv);

    if (ser->parsed()) return run_config(config, out_dir, seed, fast, threads, "ser_");
    if (pmd->parsed()) return run_config(config, out_dir, seed, fast, threads, "pmd_");

    if (spectrum->parsed()) {
        if (!config.empty())
            return run_config(config, out_dir, seed, fast, threads, "dft_illustration");
        if (sp_u.empty()) {
            std::cerr << "error: --u: required when no --config is given\n";
            return kExitValidation;
        }
        if ((opt_sjsq->count() == 0) == (opt_sjr->count() == 0)) {
            std::cerr << "error: --sigma-j-sq: give exactly one of --sigma-j-sq / --sjr-db\n";
            return kExitValidation;
        }
        std::ostringstream cfg;
        cfg << "[experiment]\nkind = dft_illustration\n";
        if (sp_symbol >= 0) cfg << "symbol = " << sp_symbol << "\n";
        cfg << "\n[lora]\nsf = " << sp_sf << "\n\n[jammer]\nkind = tone\n";
        cfg << "v = " << sp_u.size() << "\n";
        cfg << "u = " << join(sp_u) << "\n";
        if (!sp_phi.empty()) cfg << "phi = " << join(sp_phi) << "\n";
        if (opt_sjsq->count())
            cfg << "sigma_j_sq = " << sp_sigma_j_sq << "\n";
        else
            cfg << "sjr_db = " << sp_sjr_db << "\n";
        std::vector<char> csv(4096);
        const jl_status st = jl_experiment_run_text(cfg.str().c_str(), out_dir.c_str(), seed,
                                                    fast, threads, csv.data(), csv.size());
        if (st != JL_OK) return report_failure(st);
        std::cout << "wrote " << csv.data() << "\n";
        print_summary(csv.data());
        return 0;
    }

    if (demo->parsed()) {
        const int m = 1 << dd_sf;
        if (dd_sf < 7 || dd_sf > 12) {
            std::cerr << "error: --sf: must be in [7, 12]\n";
            return kExitValidation;
        }
        const double sigma_sq = std::pow(10.0, -dd_snr_db / 10.0);
        const double sigma_j_sq = sigma_sq * std::pow(10.0, -dd_njr_db / 10.0);
        int hyp = -1;
        if (dd_hyp == "h0") hyp = 0;
        else if (dd_hyp == "h1") hyp = 1;
        else if (dd_hyp == "h2") hyp = 2;
        else if (dd_hyp == "h3") hyp = 3;
        else {
            std::cerr << "error: --hypothesis: must be h0..h3\n";
            return kExitValidation;
        }
        int jam_kind = -1;
        if (dd_jammer == "none") jam_kind = 0;
        else if (dd_jammer == "band") jam_kind = 1;
        else if (dd_jammer == "tone") jam_kind = 2;
        else {
            std::cerr << "error: --jammer: must be band, tone, or none\n";
            return kExitValidation;
        }
        if (jam_kind == 2 && dd_u.empty()) {
            std::cerr << "error: --u: required for a tone jammer\n";
            return kExitValidation;
        }
        if (!dd_phi.empty() && dd_phi.size() != dd_u.size()) {
            std::cerr << "error: --phi: length must match --u\n";
            return kExitValidation;
        }

        std::vector<double> re(static_cast<size_t>(m)), im(static_cast<size_t>(m));
        jl_status st = jl_compose_received(
            dd_sf, hyp, dd_symbol, sigma_sq, jam_kind, dd_rho, dd_nu_j, sigma_j_sq,
            dd_u.empty() ? nullptr : dd_u.data(), dd_phi.empty() ? nullptr : dd_phi.data(),
            static_cast<int>(dd_u.size()), static_cast<uint64_t>(dd_seed), re.data(), im.data());
        if (st != JL_OK) return report_failure(st);

        if (hyp == 1 || hyp == 2) {
            int detected = -1;
            st = jl_demodulate(dd_sf, re.data(), im.data(), &detected);
            if (st != JL_OK) return report_failure(st);
            std::cout << "demodulated symbol " << detected << " (sent " << dd_symbol << ")\n";
        }

        st = jl_dechirp_dft(dd_sf, re.data(), im.data());
        if (st != JL_OK) return report_failure(st);

        jl_detector* det = nullptr;
        st = jl_detector_create(dd_sf, dd_l, dd_pfa, dd_pfa_saa, sigma_sq, dd_elim, &det);
        if (st != JL_OK) return report_failure(st);
        jl_decision decision{};
        st = jl_detector_detect(det, re.data(), im.data(), static_cast<uint64_t>(dd_seed) + 1,
                                &decision, nullptr);
        jl_detector_destroy(det);
        if (st == JL_ERR_INSUFFICIENT_BINS) {
            std::cout << "no decision: " << jl_last_error() << "\n";
            return 0;
        }
        if (st != JL_OK) return report_failure(st);
        std::cout << "z = " << decision.z << ", threshold = " << decision.threshold
                  << ", decision = " << (decision.jammed ? "jammed" : "clear") << " ("
                  << decision.n_eliminated << " bins eliminated)\n";
        return 0;
    }

    if (validate->parsed()) {
        std::vector<char> resolved(8192);
        const jl_status st =
            jl_experiment_validate_file(config.c_str(), resolved.data(), resolved.size());
        if (st != JL_OK) return report_failure(st);
        std::cout << resolved.data();
        return 0;
    }

    return 0;
}
