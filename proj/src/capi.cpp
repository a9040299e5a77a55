#include "jamlab.h"

#include "jamlab/config.hpp"
#include "jamlab/detector.hpp"
#include "jamlab/experiment.hpp"
#include "jamlab/interference.hpp"
#include "jamlab/jammer.hpp"
#include "jamlab/modem.hpp"
#include "jamlab/report.hpp"
#include "jamlab/version.hpp"

#include <cstring>
#include <string>

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Maps C++ failures onto the C status codes; every entry point funnels
// through here so jl_last_error always reflects the most recent failure.
template <typename Fn>
jl_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return JL_OK;
    } catch (const jamlab::ConfigError& e) {
        set_error(e.what());
        return JL_ERR_VALIDATION;
    } catch (const jamlab::insufficient_bins_error& e) {
        set_error(e.what());
        return JL_ERR_INSUFFICIENT_BINS;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return JL_ERR_DOMAIN;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return JL_ERR_INVALID_ARGUMENT;
    } catch (const std::ios_base::failure& e) {
        set_error(e.what());
        return JL_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        // File-system problems surface as runtime_error with a path in the
        // message; keep them distinguishable from logic failures.
        return std::string(e.what()).find("cannot") != std::string::npos ? JL_ERR_IO
                                                                         : JL_ERR_RUNTIME;
    }
}

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

jamlab::Frame to_frame(int m, const double* re, const double* im) {
    jamlab::Frame f(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) f[static_cast<size_t>(k)] = {re[k], im[k]};
    return f;
}

void from_frame(const jamlab::Frame& f, double* re, double* im) {
    for (size_t k = 0; k < f.size(); ++k) {
        re[k] = f[k].real();
        im[k] = f[k].imag();
    }
}

jamlab::ToneJammerSpec tone_spec(int v, const double* u, const double* phi,
                                 double sigma_j_sq) {
    require(v >= 1, "v must be >= 1");
    require(u != nullptr, "u must not be NULL");
    jamlab::ToneJammerSpec spec;
    spec.u.assign(u, u + v);
    if (phi)
        spec.phi.assign(phi, phi + v);
    else
        spec.phi.assign(static_cast<size_t>(v), 0.0);
    spec.sigma_j_sq = sigma_j_sq;
    return spec;
}

void copy_out(const std::string& s, char* buf, size_t buflen) {
    if (!buf || buflen == 0) return;
    const size_t n = std::min(buflen - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
}

} // namespace

extern "C" {

struct jl_detector {
    jamlab::LoRaParams params;
    jamlab::Detector impl;
};

const char* jl_version(void) { return jamlab::kVersion; }

const char* jl_last_error(void) { return g_last_error.c_str(); }

jl_status jl_modulate(int sf, int symbol, double* re, double* im) {
    return guarded([&] {
        require(re && im, "re/im must not be NULL");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        from_frame(jamlab::modulate(p, symbol), re, im);
    });
}

jl_status jl_downchirp(int sf, double* re, double* im) {
    return guarded([&] {
        require(re && im, "re/im must not be NULL");
        from_frame(jamlab::downchirp(jamlab::LoRaParams::from_sf(sf)), re, im);
    });
}

jl_status jl_dechirp_dft(int sf, double* re, double* im) {
    return guarded([&] {
        require(re && im, "re/im must not be NULL");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        jamlab::Modem modem(p);
        jamlab::Frame f = to_frame(p.m, re, im);
        modem.dechirp_dft_inplace(f.data());
        from_frame(f, re, im);
    });
}

jl_status jl_demodulate(int sf, const double* re, const double* im, int* symbol) {
    return guarded([&] {
        require(re && im && symbol, "re/im/symbol must not be NULL");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        jamlab::Modem modem(p);
        *symbol = modem.demodulate(to_frame(p.m, re, im));
    });
}

jl_status jl_compose_received(int sf, int hypothesis, int symbol, double sigma_sq,
                              int jammer_kind, double rho, double nu_j,
                              double sigma_j_sq, const double* u, const double* phi,
                              int v, uint64_t seed, double* re, double* im) {
    return guarded([&] {
        require(re && im, "re/im must not be NULL");
        require(hypothesis >= 0 && hypothesis <= 3, "hypothesis must be in [0, 3]");
        require(jammer_kind >= 0 && jammer_kind <= 2, "jammer_kind must be in [0, 2]");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        jamlab::Modem modem(p);
        jamlab::Rng rng(seed);
        const auto h = static_cast<jamlab::Hypothesis>(hypothesis);
        const bool wants_signal = h == jamlab::Hypothesis::h1_signal_jam ||
                                  h == jamlab::Hypothesis::h2_signal;
        std::optional<int> a;
        if (wants_signal) a = symbol;
        std::optional<jamlab::JammerSpec> jam;
        if (jammer_kind == 1)
            jam = jamlab::BandJammerSpec{rho, nu_j, sigma_j_sq};
        else if (jammer_kind == 2)
            jam = tone_spec(v, u, phi, sigma_j_sq);
        from_frame(jamlab::compose_received(modem, h, a, jamlab::ChannelSpec{sigma_sq},
                                            jam ? &*jam : nullptr, rng),
                   re, im);
    });
}

jl_status jl_gqgs(long long eta, long long eps, long long gamma_, double* re, double* im) {
    return guarded([&] {
        require(re && im, "re/im must not be NULL");
        const jamlab::Complex g = jamlab::gqgs_closed_form(eta, eps, gamma_);
        *re = g.real();
        *im = g.imag();
    });
}

jl_status jl_tone_spectrum(int sf, const double* u, const double* phi, int v,
                           double sigma_j_sq, int force_numeric, double* re, double* im) {
    return guarded([&] {
        require(re && im, "re/im must not be NULL");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        const auto spec = tone_spec(v, u, phi, sigma_j_sq);
        jamlab::Frame s;
        if (!force_numeric && spec.integer_tones()) {
            s = jamlab::tone_spectrum_closed(p, spec);
        } else {
            jamlab::Modem modem(p);
            s = jamlab::tone_spectrum_numeric(modem, spec);
        }
        from_frame(s, re, im);
    });
}

jl_status jl_extremal_symbols(int sf, const double* u, const double* phi, int v,
                              double sigma_j_sq, int* a_max, int* a_min,
                              double* gamma_plus, double* gamma_minus) {
    return guarded([&] {
        require(a_max && a_min && gamma_plus && gamma_minus,
                "output pointers must not be NULL");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        const auto spec = tone_spec(v, u, phi, sigma_j_sq);
        jamlab::Frame s;
        if (spec.integer_tones()) {
            s = jamlab::tone_spectrum_closed(p, spec);
        } else {
            jamlab::Modem modem(p);
            s = jamlab::tone_spectrum_numeric(modem, spec);
        }
        const auto ext = jamlab::extremal_symbols(s);
        *a_max = ext.a_max;
        *a_min = ext.a_min;
        *gamma_plus = ext.gamma_plus;
        *gamma_minus = ext.gamma_minus;
    });
}

double jl_saa_b_h0(int l) {
    double out = 0.0;
    guarded([&] { out = jamlab::saa_b_h0(l); });
    return out;
}

jl_status jl_saa_cdf(int l, double b, double t, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = jamlab::saa_cdf({l, b}, t);
    });
}

jl_status jl_saa_quantile(int l, double b, double p, double* out) {
    return guarded([&] {
        require(out != nullptr, "out must not be NULL");
        *out = jamlab::saa_quantile({l, b}, p);
    });
}

jl_status jl_detector_create(int sf, int l, double pfa, double pfa_saa,
                             double sigma_sq, int elimination, jl_detector** out) {
    jl_detector* made = nullptr;
    const jl_status st = guarded([&] {
        require(out != nullptr, "out must not be NULL");
        require(elimination >= 0 && elimination <= 3, "elimination must be in [0, 3]");
        const auto p = jamlab::LoRaParams::from_sf(sf);
        jamlab::DetectorConfig cfg;
        cfg.l = l;
        cfg.pfa = pfa;
        cfg.pfa_saa = pfa_saa;
        cfg.sigma_sq = sigma_sq;
        cfg.policy = static_cast<jamlab::EliminationPolicy>(elimination);
        made = new jl_detector{p, jamlab::Detector(p, cfg)};
    });
    if (st == JL_OK) *out = made;
    return st;
}

void jl_detector_destroy(jl_detector* det) { delete det; }

jl_status jl_detector_detect(const jl_detector* det, const double* re, const double* im,
                             uint64_t seed, jl_decision* out, int* bins_used) {
    return guarded([&] {
        require(det != nullptr, "detector must not be NULL");
        require(re && im && out, "re/im/out must not be NULL");
        jamlab::Rng rng(seed);
        const jamlab::Decision d =
            det->impl.detect(to_frame(det->params.m, re, im), rng);
        out->z = d.z;
        out->threshold = d.threshold;
        out->jammed = d.jammed ? 1 : 0;
        out->n_eliminated = d.n_eliminated;
        if (bins_used)
            for (size_t i = 0; i < d.bins.size(); ++i)
                bins_used[i] = d.bins[i];
    });
}

jl_status jl_detector_pmd_theory(const jl_detector* det, int jammer_kind,
                                 double sigma_j_sq, const double* u, int v,
                                 long long n_draws, uint64_t seed, double* out) {
    return guarded([&] {
        require(det != nullptr, "detector must not be NULL");
        require(out != nullptr, "out must not be NULL");
        require(jammer_kind == 1 || jammer_kind == 2, "jammer_kind must be 1 or 2");
        const auto& cfg = det->impl.config();
        if (jammer_kind == 1) {
            *out = jamlab::pmd_theory_band(det->params, cfg, sigma_j_sq);
        } else if (v == 1) {
            *out = jamlab::pmd_theory_single_tone(det->params, cfg, sigma_j_sq).selected;
        } else {
            const auto spec = tone_spec(v, u, nullptr, sigma_j_sq);
            *out = jamlab::pmd_theory_multitone(det->params, cfg, spec, n_draws, seed);
        }
    });
}

jl_status jl_experiment_validate_text(const char* text, char* buf, size_t buflen) {
    return guarded([&] {
        require(text != nullptr, "text must not be NULL");
        const auto spec = jamlab::parse_experiment(text);
        copy_out(jamlab::dump_experiment(spec), buf, buflen);
    });
}

jl_status jl_experiment_validate_file(const char* path, char* buf, size_t buflen) {
    return guarded([&] {
        require(path != nullptr, "path must not be NULL");
        const auto spec = jamlab::parse_experiment_file(path);
        copy_out(jamlab::dump_experiment(spec), buf, buflen);
    });
}

namespace {

jl_status run_spec(jamlab::ExperimentSpec spec, const char* out_dir, long long seed_override,
                   long long fast, int threads, char* csv_path, size_t csv_path_len) {
    return guarded([&] {
        require(out_dir != nullptr, "out_dir must not be NULL");
        if (seed_override >= 0) spec.seed = static_cast<uint64_t>(seed_override);
        jamlab::RunOptions opts;
        opts.fast = fast < 1 ? 1 : fast;
        opts.threads = threads < 1 ? 1 : threads;
        const auto result = jamlab::run_experiment(spec, opts);
        copy_out(jamlab::write_run_files(out_dir, spec, opts, result), csv_path,
                 csv_path_len);
    });
}

} // namespace

jl_status jl_experiment_run_text(const char* text, const char* out_dir,
                                 long long seed_override, long long fast, int threads,
                                 char* csv_path, size_t csv_path_len) {
    jamlab::ExperimentSpec spec;
    const jl_status st = guarded([&] {
        require(text != nullptr, "text must not be NULL");
        spec = jamlab::parse_experiment(text);
    });
    if (st != JL_OK) return st;
    return run_spec(std::move(spec), out_dir, seed_override, fast, threads, csv_path,
                    csv_path_len);
}

jl_status jl_experiment_run_file(const char* path, const char* out_dir,
                                 long long seed_override, long long fast, int threads,
                                 char* csv_path, size_t csv_path_len) {
    jamlab::ExperimentSpec spec;
    const jl_status st = guarded([&] {
        require(path != nullptr, "path must not be NULL");
        spec = jamlab::parse_experiment_file(path);
    });
    if (st != JL_OK) return st;
    return run_spec(std::move(spec), out_dir, seed_override, fast, threads, csv_path,
                    csv_path_len);
}

} // extern "C"
