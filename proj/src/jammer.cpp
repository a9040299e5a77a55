#include "jamlab/jammer.hpp"

#include <cmath>
#include <numbers>

namespace jamlab {

Frame unit_tone_frame(const LoRaParams& p, double u) {
    Frame s(static_cast<size_t>(p.m));
    for (int k = 0; k < p.m; ++k) {
        // For integer u the turn count u*k/M is reduced exactly; fractional u
        // stays well inside double precision (u*k < 2^24 at M = 4096).
        const double turns = std::fmod(u * k / p.m, 1.0);
        const double ang = 2.0 * std::numbers::pi * turns;
        s[static_cast<size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    return s;
}

Frame gen_tone_jam(const LoRaParams& p, const ToneJammerSpec& spec) {
    spec.validate(p);
    const double amp = std::sqrt(spec.sigma_j_sq / spec.v());
    Frame s(static_cast<size_t>(p.m), Complex{0.0, 0.0});
    for (int v = 0; v < spec.v(); ++v) {
        const Complex coeff = std::polar(amp, spec.phi[static_cast<size_t>(v)]);
        const Frame tone = unit_tone_frame(p, spec.u[static_cast<size_t>(v)]);
        for (int k = 0; k < p.m; ++k) s[static_cast<size_t>(k)] += coeff * tone[static_cast<size_t>(k)];
    }
    return s;
}

Frame gen_band_jam(const LoRaParams& p, const BandJammerSpec& spec,
                   const FftPlan& plan, Rng& rng) {
    spec.validate();
    if (plan.size() != p.m)
        throw std::invalid_argument("band jammer plan length must equal M");
    const int k_bins = static_cast<int>(std::ceil(spec.rho * p.m));
    const int center = static_cast<int>(std::lround(spec.nu_j * p.m)) % p.m;
    // Per occupied bin variance M^2 sigma_j_sq / K makes the time-domain
    // per-sample power exactly sigma_j_sq for every rho.
    const double bin_var = static_cast<double>(p.m) * p.m * spec.sigma_j_sq / k_bins;
    Frame spectrum(static_cast<size_t>(p.m), Complex{0.0, 0.0});
    for (int j = 0; j < k_bins; ++j) {
        int bin = (center - k_bins / 2 + j) % p.m;
        if (bin < 0) bin += p.m;
        spectrum[static_cast<size_t>(bin)] = rng.cnormal(bin_var);
    }
    return plan.inverse(std::move(spectrum));
}

Frame compose_received(const Modem& modem, Hypothesis h, std::optional<int> a,
                       const ChannelSpec& ch, const JammerSpec* jam, Rng& rng) {
    ch.validate();
    const bool want_signal = h == Hypothesis::h1_signal_jam || h == Hypothesis::h2_signal;
    const bool want_jam = h == Hypothesis::h1_signal_jam || h == Hypothesis::h3_jam;
    if (want_signal != a.has_value())
        throw std::domain_error(want_signal ? "hypothesis carries a symbol but none was given"
                                            : "hypothesis carries no symbol but one was given");
    if (want_jam != (jam != nullptr))
        throw std::domain_error(want_jam ? "hypothesis carries a jammer but none was given"
                                         : "hypothesis carries no jammer but one was given");

    const LoRaParams& p = modem.params();
    Frame r = want_signal ? modem.modulate(*a) : Frame(static_cast<size_t>(p.m), Complex{0.0, 0.0});
    for (int k = 0; k < p.m; ++k) r[static_cast<size_t>(k)] += rng.cnormal(ch.sigma_sq);
    if (want_jam) {
        Frame s = std::holds_alternative<ToneJammerSpec>(*jam)
                      ? gen_tone_jam(p, std::get<ToneJammerSpec>(*jam))
                      : gen_band_jam(p, std::get<BandJammerSpec>(*jam), modem.plan(), rng);
        for (int k = 0; k < p.m; ++k) r[static_cast<size_t>(k)] += s[static_cast<size_t>(k)];
    }
    return r;
}

} // namespace jamlab
