#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

namespace jamlab {

using Complex = std::complex<double>;
// Time-domain frame or dechirped DFT, always of length M.
using Frame = std::vector<Complex>;

// Spreading-factor parameterization. M = 2^sf samples per symbol frame.
struct LoRaParams {
    int sf = 7;
    int m = 128;

    static LoRaParams from_sf(int sf) {
        if (sf < 7 || sf > 12)
            throw std::invalid_argument("sf must be in [7, 12]");
        return LoRaParams{sf, 1 << sf};
    }
};

// AWGN channel with per-sample complex noise variance sigma_sq.
// The signal chirp has unit power, so SNR = 1/sigma_sq.
struct ChannelSpec {
    double sigma_sq = 1.0;

    static double sigma_sq_from_snr_db(double snr_db);
    static double snr_db_from_sigma_sq(double sigma_sq);
    void validate() const {
        if (!(sigma_sq >= 0.0))
            throw std::invalid_argument("channel sigma_sq must be >= 0");
    }
};

inline double ChannelSpec::sigma_sq_from_snr_db(double snr_db) {
    return std::pow(10.0, -snr_db / 10.0);
}
inline double ChannelSpec::snr_db_from_sigma_sq(double sigma_sq) {
    return -10.0 * std::log10(sigma_sq);
}

// Receiver-side hypotheses: signal and/or jammer presence.
enum class Hypothesis { h0_noise, h1_signal_jam, h2_signal, h3_jam };

// Band jammer: total power sigma_j_sq spread over a fraction rho of the
// occupied bandwidth, centered at normalized frequency nu_j. rho = 1 is the
// full-band case (white complex Gaussian).
struct BandJammerSpec {
    double rho = 1.0;
    double nu_j = 0.0;
    double sigma_j_sq = 1.0;

    void validate() const {
        if (!(rho > 0.0 && rho <= 1.0))
            throw std::invalid_argument("band jammer rho must be in (0, 1]");
        if (!(nu_j >= 0.0 && nu_j < 1.0))
            throw std::invalid_argument("band jammer nu_j must be in [0, 1)");
        if (!(sigma_j_sq > 0.0))
            throw std::invalid_argument("band jammer sigma_j_sq must be > 0");
    }
};

// Tone jammer: V complex tones at cyclic frequencies u[v]/M with phases
// phi[v], total power sigma_j_sq split evenly across tones.
struct ToneJammerSpec {
    std::vector<double> u;
    std::vector<double> phi;
    double sigma_j_sq = 1.0;

    int v() const { return static_cast<int>(u.size()); }

    bool integer_tones() const {
        for (double uv : u)
            if (std::abs(uv - std::round(uv)) > 1e-9) return false;
        return true;
    }

    void validate(const LoRaParams& p) const {
        if (u.empty())
            throw std::invalid_argument("tone jammer needs at least one tone");
        if (phi.size() != u.size())
            throw std::invalid_argument("tone jammer u and phi lengths differ");
        for (double uv : u)
            if (!(uv > 0.0 && uv <= p.m - 1))
                throw std::invalid_argument("tone frequency u must be in (0, M-1]");
        if (!(sigma_j_sq > 0.0))
            throw std::invalid_argument("tone jammer sigma_j_sq must be > 0");
    }
};

using JammerSpec = std::variant<BandJammerSpec, ToneJammerSpec>;

inline double sigma_j_sq_of(const JammerSpec& j) {
    return std::visit([](const auto& s) { return s.sigma_j_sq; }, j);
}

} // namespace jamlab
