#include "jamlab/experiment.hpp"

#include "jamlab/interference.hpp"
#include "jamlab/jammer.hpp"
#include "jamlab/modem.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace jamlab {

namespace {

// Substream layout: trials of point p use streams (p << 40) + t; auxiliary
// draws (noise-floor calibration) use the top slot of the point's block.
std::uint64_t trial_stream(int point, long long trial) {
    return (static_cast<std::uint64_t>(point) << 40) + static_cast<std::uint64_t>(trial);
}
std::uint64_t aux_stream(int point) {
    return (static_cast<std::uint64_t>(point) << 40) + (1ULL << 39);
}

struct Counts {
    long long hits = 0;    // errors or misses
    long long voided = 0;  // frames skipped (insufficient candidate bins)
};

// Contiguous split of [0, n) across up to `threads` workers; counts are
// integers, so the merge is order-insensitive and bit-exact.
template <typename ChunkFn>
Counts parallel_trials(long long n, int threads, const ChunkFn& chunk) {
    const int workers = std::max(1, static_cast<int>(std::min<long long>(threads, n)));
    if (workers == 1) return chunk(0, n);
    std::vector<Counts> parts(static_cast<size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const long long lo = n * w / workers;
        const long long hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi, w] { parts[static_cast<size_t>(w)] = chunk(lo, hi); });
    }
    for (auto& t : pool) t.join();
    Counts total;
    for (const Counts& c : parts) {
        total.hits += c.hits;
        total.voided += c.voided;
    }
    return total;
}

// Per-trial tone realization working set.
struct ToneDraw {
    std::vector<int> bank_idx;   // indices into the bank
    std::vector<Complex> coeff;  // amp * e^{j phi_v}
};

// Unit-amplitude tone frames (and their dechirped images when the symbol
// policy needs per-trial spectra). Fixed-tone configs bank exactly the
// listed tones; random-tone configs bank every integer frequency.
struct ToneBank {
    std::vector<Frame> time;
    std::vector<Frame> dechirped;
    bool by_frequency = false;  // index = u - 1 for random integer tones

    static ToneBank build(const Modem& modem, const JammerConfig& jam, bool want_spectra) {
        const LoRaParams& p = modem.params();
        ToneBank bank;
        std::vector<double> us;
        if (jam.random_u) {
            bank.by_frequency = true;
            us.reserve(static_cast<size_t>(p.m - 1));
            for (int u = 1; u <= p.m - 1; ++u) us.push_back(u);
        } else {
            us = jam.u;
        }
        bank.time.reserve(us.size());
        for (double u : us) bank.time.push_back(unit_tone_frame(p, u));
        if (want_spectra) {
            bank.dechirped.reserve(us.size());
            for (const Frame& f : bank.time) bank.dechirped.push_back(modem.dechirp_dft(f));
        }
        return bank;
    }
};

struct PointContext {
    const ExperimentSpec& spec;
    const Modem& modem;
    const ToneBank* bank = nullptr;
    double sigma_sq = 1.0;
    double sigma_j_sq = 0.0;
    double rho = 1.0;
    int point_idx = 0;
};

void draw_tones(const PointContext& ctx, Rng& rng, ToneDraw& d) {
    const JammerConfig& jam = ctx.spec.jammer;
    const int v = jam.v;
    const double amp = std::sqrt(ctx.sigma_j_sq / v);
    d.bank_idx.resize(static_cast<size_t>(v));
    d.coeff.resize(static_cast<size_t>(v));
    for (int i = 0; i < v; ++i) {
        d.bank_idx[static_cast<size_t>(i)] =
            jam.random_u ? static_cast<int>(rng.uniform_int(
                               static_cast<std::uint64_t>(ctx.spec.lora.m - 1)))
                         : i;
        const double phi = jam.random_phi
                               ? rng.uniform(0.0, 2.0 * std::numbers::pi)
                               : jam.phi[static_cast<size_t>(i)];
        d.coeff[static_cast<size_t>(i)] = std::polar(amp, phi);
    }
}

// Extremal symbol of the realized dechirped jammer image. scratch holds the
// running spectrum sum; only Re matters for the argmin/argmax.
int extremal_symbol(const PointContext& ctx, const ToneDraw& d, bool want_max,
                    std::vector<double>& scratch_re) {
    const int m = ctx.spec.lora.m;
    scratch_re.assign(static_cast<size_t>(m), 0.0);
    for (size_t v = 0; v < d.coeff.size(); ++v) {
        const Frame& spec_v = ctx.bank->dechirped[static_cast<size_t>(d.bank_idx[v])];
        const Complex c = d.coeff[v];
        for (int n = 0; n < m; ++n) {
            const Complex s = spec_v[static_cast<size_t>(n)];
            scratch_re[static_cast<size_t>(n)] += c.real() * s.real() - c.imag() * s.imag();
        }
    }
    int best = 0;
    double best_re = scratch_re[0];
    for (int n = 1; n < m; ++n) {
        const double re = scratch_re[static_cast<size_t>(n)];
        if (want_max ? re > best_re : re < best_re) {
            best_re = re;
            best = n;
        }
    }
    return best;
}

int draw_symbol(const PointContext& ctx, const ToneDraw* tones, Rng& rng,
                std::vector<double>& scratch_re) {
    switch (ctx.spec.symbol_policy) {
        case SymbolPolicy::uniform:
            return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(ctx.spec.lora.m)));
        case SymbolPolicy::fixed:
            return ctx.spec.symbol_value;
        case SymbolPolicy::a_max:
            return extremal_symbol(ctx, *tones, true, scratch_re);
        case SymbolPolicy::a_min:
            return extremal_symbol(ctx, *tones, false, scratch_re);
    }
    return 0;
}

// Received H1 frame for one trial, written into r. Draw order: tone
// parameters (if any), symbol, noise, band-jammer bins (if any).
int compose_trial_frame(const PointContext& ctx, Rng& rng, ToneDraw& tones, Frame& r,
                        std::vector<double>& scratch_re) {
    const LoRaParams& p = ctx.spec.lora;
    const bool tone = ctx.spec.jammer.kind == JammerConfig::Kind::tone;
    if (tone) draw_tones(ctx, rng, tones);
    const int a = draw_symbol(ctx, tone ? &tones : nullptr, rng, scratch_re);

    r = modulate(p, a);
    for (int k = 0; k < p.m; ++k) r[static_cast<size_t>(k)] += rng.cnormal(ctx.sigma_sq);

    if (tone) {
        for (size_t v = 0; v < tones.coeff.size(); ++v) {
            const Frame& tf = ctx.bank->time[static_cast<size_t>(tones.bank_idx[v])];
            const Complex c = tones.coeff[v];
            for (int k = 0; k < p.m; ++k) r[static_cast<size_t>(k)] += c * tf[static_cast<size_t>(k)];
        }
    } else {
        const BandJammerSpec band{ctx.rho, ctx.spec.jammer.nu_j, ctx.sigma_j_sq};
        const Frame s = gen_band_jam(p, band, ctx.modem.plan(), rng);
        for (int k = 0; k < p.m; ++k) r[static_cast<size_t>(k)] += s[static_cast<size_t>(k)];
    }
    return a;
}

CurvePoint run_ser_point(const PointContext& ctx, double x, long long trials, int threads) {
    const Counts c = parallel_trials(trials, threads, [&](long long lo, long long hi) {
        Counts local;
        Frame r;
        ToneDraw tones;
        std::vector<double> scratch_re;
        for (long long t = lo; t < hi; ++t) {
            Rng rng(ctx.spec.seed, trial_stream(ctx.point_idx, t));
            const int a = compose_trial_frame(ctx, rng, tones, r, scratch_re);
            if (ctx.modem.demodulate(r) != a) ++local.hits;
        }
        return local;
    });
    CurvePoint pt;
    pt.x = x;
    pt.metric = static_cast<double>(c.hits) / static_cast<double>(trials);
    pt.ci_halfwidth = binomial_ci_halfwidth(c.hits, trials);
    pt.trials_effective = trials;
    return pt;
}

double detector_sigma_sq(const PointContext& ctx) {
    if (ctx.spec.noise_known) return ctx.sigma_sq;
    // Calibration on noise-only frames from the point's auxiliary substream.
    Rng rng(ctx.spec.seed, aux_stream(ctx.point_idx));
    std::vector<Frame> frames(static_cast<size_t>(ctx.spec.noise_est_frames));
    for (Frame& f : frames) {
        f.assign(static_cast<size_t>(ctx.spec.lora.m), Complex{0.0, 0.0});
        for (auto& s : f) s += rng.cnormal(ctx.sigma_sq);
    }
    return estimate_noise_floor(frames);
}

void add_theory_extras(const PointContext& ctx, const DetectorConfig& det, CurvePoint& pt,
                       long long theory_draws) {
    if (ctx.spec.jammer.kind == JammerConfig::Kind::band) {
        pt.extra.emplace_back("theory", pmd_theory_band(ctx.spec.lora, det, ctx.sigma_j_sq));
        return;
    }
    if (ctx.spec.jammer.v == 1) {
        const StjTheory t = pmd_theory_single_tone(ctx.spec.lora, det, ctx.sigma_j_sq);
        pt.extra.emplace_back("theory", t.selected);
        pt.extra.emplace_back("theory_gaussian", t.gaussian);
        pt.extra.emplace_back("theory_saa", t.saa_h0);
        return;
    }
    // Multitone: fixed tone list with phases redrawn per draw.
    ToneJammerSpec spec{ctx.spec.jammer.u, std::vector<double>(ctx.spec.jammer.u.size(), 0.0),
                        ctx.sigma_j_sq};
    const double pmd = pmd_theory_multitone(ctx.spec.lora, det, spec, theory_draws,
                                            ctx.spec.seed ^ 0x7E0D5EEDULL);
    pt.extra.emplace_back("theory", pmd);
}

CurvePoint run_pmd_sim_point(const PointContext& ctx, double x, long long trials,
                             long long theory_draws, int threads) {
    DetectorConfig det = ctx.spec.detector;
    det.sigma_sq = detector_sigma_sq(ctx);
    const Detector detector(ctx.spec.lora, det);

    const Counts c = parallel_trials(trials, threads, [&](long long lo, long long hi) {
        Counts local;
        Frame r;
        ToneDraw tones;
        std::vector<double> scratch_re;
        for (long long t = lo; t < hi; ++t) {
            Rng rng(ctx.spec.seed, trial_stream(ctx.point_idx, t));
            compose_trial_frame(ctx, rng, tones, r, scratch_re);
            ctx.modem.dechirp_dft_inplace(r.data());
            try {
                if (!detector.detect(r, rng).jammed) ++local.hits;
            } catch (const insufficient_bins_error&) {
                ++local.voided;
            }
        }
        return local;
    });

    CurvePoint pt;
    pt.x = x;
    pt.trials_effective = trials - c.voided;
    pt.metric = pt.trials_effective > 0
                    ? static_cast<double>(c.hits) / static_cast<double>(pt.trials_effective)
                    : 0.0;
    pt.ci_halfwidth =
        pt.trials_effective > 0 ? binomial_ci_halfwidth(c.hits, pt.trials_effective) : 0.0;
    add_theory_extras(ctx, det, pt, theory_draws);
    pt.extra.emplace_back("n_voided", static_cast<double>(c.voided));
    return pt;
}

CurvePoint run_pmd_theory_point(const PointContext& ctx, double x, long long theory_draws) {
    DetectorConfig det = ctx.spec.detector;
    det.sigma_sq = detector_sigma_sq(ctx);
    CurvePoint pt;
    pt.x = x;
    add_theory_extras(ctx, det, pt, theory_draws);
    pt.metric = pt.extra.front().second;  // "theory"
    const bool mc_backed =
        ctx.spec.jammer.kind == JammerConfig::Kind::tone && ctx.spec.jammer.v > 1;
    pt.trials_effective = mc_backed ? theory_draws : 0;
    if (mc_backed)
        pt.ci_halfwidth = binomial_ci_halfwidth(
            std::llround(pt.metric * static_cast<double>(theory_draws)), theory_draws);
    return pt;
}

RunResult run_spectrum(const ExperimentSpec& spec) {
    const LoRaParams& p = spec.lora;
    Modem modem(p);
    ToneJammerSpec jam{spec.jammer.u, spec.jammer.phi, spec.jammer.sigma_j_sq};
    const Frame s_spec = jam.integer_tones() ? tone_spectrum_closed(p, jam)
                                             : tone_spectrum_numeric(modem, jam);

    Frame r = spec.has_symbol ? modulate(p, spec.symbol_value)
                              : Frame(static_cast<size_t>(p.m), Complex{0.0, 0.0});
    if (!spec.noiseless) {
        Rng rng(spec.seed, 0);
        const double sigma_sq = ChannelSpec::sigma_sq_from_snr_db(spec.snr_db);
        for (auto& smp : r) smp += rng.cnormal(sigma_sq);
    }
    const Frame jam_time = gen_tone_jam(p, jam);
    for (int k = 0; k < p.m; ++k) r[static_cast<size_t>(k)] += jam_time[static_cast<size_t>(k)];
    const Frame bins = modem.dechirp_dft(r);

    RunResult out;
    out.kind = spec.kind;
    out.is_spectrum = true;
    out.spectrum.reserve(static_cast<size_t>(p.m));
    for (int n = 0; n < p.m; ++n)
        out.spectrum.push_back({n, std::abs(bins[static_cast<size_t>(n)]),
                                s_spec[static_cast<size_t>(n)].real(),
                                s_spec[static_cast<size_t>(n)].imag()});

    const ExtremalSymbols ext = extremal_symbols(s_spec);
    out.summary.emplace_back("a_max", ext.a_max);
    out.summary.emplace_back("a_min", ext.a_min);
    out.summary.emplace_back("gamma_plus", ext.gamma_plus);
    out.summary.emplace_back("gamma_minus", ext.gamma_minus);
    out.summary.emplace_back("peak_plus", p.m + ext.gamma_plus);
    out.summary.emplace_back("peak_minus", p.m - ext.gamma_minus);
    return out;
}

} // namespace

RunResult run_experiment(const ExperimentSpec& spec, const RunOptions& opts) {
    if (opts.fast < 1) throw std::invalid_argument("fast divisor must be >= 1");
    if (opts.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (spec.kind == ExperimentKind::dft_illustration) return run_spectrum(spec);

    const long long trials = std::max<long long>(1, spec.trials / opts.fast);
    const long long theory_draws = std::max<long long>(1, spec.theory_draws / opts.fast);

    Modem modem(spec.lora);
    const bool want_spectra = spec.symbol_policy == SymbolPolicy::a_min ||
                              spec.symbol_policy == SymbolPolicy::a_max;
    ToneBank bank;
    if (spec.jammer.kind == JammerConfig::Kind::tone)
        bank = ToneBank::build(modem, spec.jammer, want_spectra);

    const double sigma_sq = ChannelSpec::sigma_sq_from_snr_db(spec.snr_db);

    RunResult out;
    out.kind = spec.kind;
    out.x_name = spec.sweep_axis;
    const bool is_ser =
        spec.kind == ExperimentKind::ser_vs_sjr || spec.kind == ExperimentKind::ser_vs_rho;
    out.metric_name = is_ser ? "ser" : "pmd";

    for (int i = 0; i < static_cast<int>(spec.sweep_values.size()); ++i) {
        const double x = spec.sweep_values[static_cast<size_t>(i)];
        PointContext ctx{spec, modem, &bank, sigma_sq, spec.jammer.sigma_j_sq,
                         spec.jammer.rho, i};
        if (spec.sweep_axis == "sjr_db")
            ctx.sigma_j_sq = std::pow(10.0, -x / 10.0);
        else if (spec.sweep_axis == "njr_db")
            ctx.sigma_j_sq = sigma_sq * std::pow(10.0, -x / 10.0);
        else if (spec.sweep_axis == "rho")
            ctx.rho = x;

        switch (spec.kind) {
            case ExperimentKind::ser_vs_sjr:
            case ExperimentKind::ser_vs_rho:
                out.points.push_back(run_ser_point(ctx, x, trials, opts.threads));
                break;
            case ExperimentKind::pmd_theory_vs_sim:
                out.points.push_back(
                    run_pmd_sim_point(ctx, x, trials, theory_draws, opts.threads));
                break;
            case ExperimentKind::pmd_vs_l: {
                ExperimentSpec point_spec = spec;  // L rides the sweep axis
                point_spec.detector.l = static_cast<int>(x);
                PointContext lctx{point_spec, modem, &bank, sigma_sq,
                                  spec.jammer.sigma_j_sq, spec.jammer.rho, i};
                out.points.push_back(run_pmd_theory_point(lctx, x, theory_draws));
                break;
            }
            case ExperimentKind::pmd_vs_njr:
                out.points.push_back(run_pmd_theory_point(ctx, x, theory_draws));
                break;
            case ExperimentKind::dft_illustration:
                break;  // handled above
        }
    }

    if (!out.points.empty())
        for (const auto& kv : out.points.front().extra)
            out.extra_names.push_back(kv.first);
    return out;
}

} // namespace jamlab
