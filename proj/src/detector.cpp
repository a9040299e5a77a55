#include "jamlab/detector.hpp"

#include "jamlab/jammer.hpp"
#include "jamlab/modem.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace jamlab {

double estimate_noise_floor(const std::vector<Frame>& h0_frames) {
    if (h0_frames.empty())
        throw std::invalid_argument("noise floor estimate requires at least one frame");
    double acc = 0.0;
    std::size_t count = 0;
    for (const Frame& f : h0_frames) {
        for (const Complex& s : f) acc += std::norm(s);
        count += f.size();
    }
    return acc / static_cast<double>(count);
}

Detector::Detector(LoRaParams p, DetectorConfig cfg) : p_(p), cfg_(cfg) {
    cfg_.validate(p_);
    b_x_ = std::sqrt(p_.m * cfg_.sigma_sq / 2.0);
    lambda_bin_ = rayleigh_quantile(b_x_, 1.0 - cfg_.pfa);
    lambda_ = saa_quantile({cfg_.l, saa_b_h0(cfg_.l)}, 1.0 - cfg_.pfa_saa);
}

Detector::Statistic Detector::compute_statistic(const Frame& dechirped, Rng& rng) const {
    if (static_cast<int>(dechirped.size()) != p_.m)
        throw std::invalid_argument("dechirped frame length must equal M");

    const bool drop_peak = cfg_.policy == EliminationPolicy::peak_only ||
                           cfg_.policy == EliminationPolicy::threshold_and_peak;
    const bool drop_hot = cfg_.policy == EliminationPolicy::threshold_only ||
                          cfg_.policy == EliminationPolicy::threshold_and_peak;
    const int peak = drop_peak ? argmax_magnitude(dechirped) : -1;
    const double hot_sq = lambda_bin_ * lambda_bin_;

    std::vector<int> candidates;
    candidates.reserve(static_cast<size_t>(p_.m));
    for (int n = 0; n < p_.m; ++n) {
        if (n == peak) continue;
        if (drop_hot && std::norm(dechirped[static_cast<size_t>(n)]) > hot_sq) continue;
        candidates.push_back(n);
    }
    Statistic st;
    st.n_eliminated = p_.m - static_cast<int>(candidates.size());
    if (static_cast<int>(candidates.size()) < cfg_.l)
        throw insufficient_bins_error("fewer candidate bins than L after elimination");

    // Partial Fisher-Yates: first L entries become the uniform random subset.
    st.bins.resize(static_cast<size_t>(cfg_.l));
    for (int i = 0; i < cfg_.l; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.uniform_int(candidates.size() - i));
        std::swap(candidates[static_cast<size_t>(i)], candidates[j]);
        st.bins[static_cast<size_t>(i)] = candidates[static_cast<size_t>(i)];
    }

    double sum = 0.0;
    for (int n : st.bins) sum += std::abs(dechirped[static_cast<size_t>(n)]);
    st.z = sum / (b_x_ * std::sqrt(static_cast<double>(cfg_.l)));
    return st;
}

Decision Detector::detect(const Frame& dechirped, Rng& rng) const {
    Statistic st = compute_statistic(dechirped, rng);
    Decision d;
    d.z = st.z;
    d.threshold = lambda_;
    d.jammed = st.z >= lambda_;
    d.n_eliminated = st.n_eliminated;
    d.bins = std::move(st.bins);
    return d;
}

double pmd_theory_band(const LoRaParams& p, const DetectorConfig& cfg, double sigma_j_sq) {
    cfg.validate(p);
    if (!(sigma_j_sq > 0.0))
        throw std::invalid_argument("pmd_theory_band requires sigma_j_sq > 0");
    const double b_h0 = saa_b_h0(cfg.l);
    const double lambda = saa_quantile({cfg.l, b_h0}, 1.0 - cfg.pfa_saa);
    const double b_bj = (1.0 + sigma_j_sq / cfg.sigma_sq) * b_h0;
    return saa_cdf({cfg.l, b_bj}, lambda);
}

StjTheory pmd_theory_single_tone(const LoRaParams& p, const DetectorConfig& cfg,
                                 double sigma_j_sq) {
    cfg.validate(p);
    if (!(sigma_j_sq > 0.0))
        throw std::invalid_argument("pmd_theory_single_tone requires sigma_j_sq > 0");
    const double b_h0 = saa_b_h0(cfg.l);
    const double lambda = saa_quantile({cfg.l, b_h0}, 1.0 - cfg.pfa_saa);

    StjTheory out;
    // Sum of L Ricians with |S~| = sqrt(M sigma_j_sq) at every bin: mean
    // sqrt(L (1 + 2 sigma_j_sq/sigma^2)) and unit variance on the scaled axis.
    const double mu = std::sqrt(cfg.l * (1.0 + 2.0 * sigma_j_sq / cfg.sigma_sq));
    out.gaussian = normal_cdf(lambda - mu);
    out.saa_h0 = saa_cdf({cfg.l, b_h0}, lambda);
    const double njr_db = 10.0 * std::log10(cfg.sigma_sq / sigma_j_sq);
    out.selected = njr_db <= 0.0 ? out.gaussian : out.saa_h0;
    return out;
}

double pmd_theory_multitone(const LoRaParams& p, const DetectorConfig& cfg,
                            const ToneJammerSpec& spec, long long n_draws,
                            std::uint64_t seed) {
    cfg.validate(p);
    spec.validate(p);
    if (n_draws < 1) throw std::invalid_argument("pmd_theory_multitone needs n_draws >= 1");

    Modem modem(p);
    const int v = spec.v();
    std::vector<Frame> tone_bins;
    tone_bins.reserve(static_cast<size_t>(v));
    for (int i = 0; i < v; ++i)
        tone_bins.push_back(modem.dechirp_dft(unit_tone_frame(p, spec.u[static_cast<size_t>(i)])));

    const double amp = std::sqrt(spec.sigma_j_sq / v);
    const double b_x = std::sqrt(p.m * cfg.sigma_sq / 2.0);
    const double lambda = saa_quantile({cfg.l, saa_b_h0(cfg.l)}, 1.0 - cfg.pfa_saa);
    const double noise_var = p.m * cfg.sigma_sq;
    const double inv = 1.0 / (b_x * std::sqrt(static_cast<double>(cfg.l)));

    std::vector<int> idx(static_cast<size_t>(p.m));
    std::vector<Complex> coeff(static_cast<size_t>(v));
    long long misses = 0;
    for (long long i = 0; i < n_draws; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        for (int t = 0; t < v; ++t)
            coeff[static_cast<size_t>(t)] =
                std::polar(amp, rng.uniform(0.0, 2.0 * std::numbers::pi));
        std::iota(idx.begin(), idx.end(), 0);
        double sum = 0.0;
        for (int l = 0; l < cfg.l; ++l) {
            const std::size_t j = l + static_cast<std::size_t>(rng.uniform_int(idx.size() - l));
            std::swap(idx[static_cast<size_t>(l)], idx[j]);
            const int n = idx[static_cast<size_t>(l)];
            Complex bin = rng.cnormal(noise_var);
            for (int t = 0; t < v; ++t)
                bin += coeff[static_cast<size_t>(t)] * tone_bins[static_cast<size_t>(t)][static_cast<size_t>(n)];
            sum += std::abs(bin);
        }
        if (sum * inv < lambda) ++misses;
    }
    return static_cast<double>(misses) / static_cast<double>(n_draws);
}

} // namespace jamlab
