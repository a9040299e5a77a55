#include "jamlab/modem.hpp"

#include <numbers>

namespace jamlab {

namespace {

// Frame phases are rational multiples of 2 pi: the exponent of sample k is
// (k^2 + k(2a - M)) / (2M) turns. Reducing the integer numerator mod 2M
// before the trig call keeps samples exact to ~1 ulp even at M = 4096.
Frame chirp_frame(const LoRaParams& p, long long two_a_minus_m) {
    const long long two_m = 2LL * p.m;
    Frame x(static_cast<size_t>(p.m));
    for (long long k = 0; k < p.m; ++k) {
        long long num = (k * k + k * two_a_minus_m) % two_m;
        if (num < 0) num += two_m;
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(num) /
                           static_cast<double>(two_m);
        x[static_cast<size_t>(k)] = {std::cos(ang), std::sin(ang)};
    }
    return x;
}

} // namespace

Frame modulate(const LoRaParams& p, int a) {
    if (a < 0 || a >= p.m)
        throw std::invalid_argument("symbol must be in [0, M-1]");
    return chirp_frame(p, 2LL * a - p.m);
}

Frame downchirp(const LoRaParams& p) {
    Frame d = modulate(p, 0);
    for (auto& s : d) s = std::conj(s);
    return d;
}

Modem::Modem(LoRaParams p) : p_(p), plan_(p.m), down_(downchirp(p)) {}

void Modem::dechirp_dft_inplace(Complex* r) const {
    for (int k = 0; k < p_.m; ++k) r[k] *= down_[static_cast<size_t>(k)];
    plan_.forward(r);
}

Frame Modem::dechirp_dft(const Frame& r) const {
    if (static_cast<int>(r.size()) != p_.m)
        throw std::invalid_argument("frame length must equal M");
    Frame out = r;
    dechirp_dft_inplace(out.data());
    return out;
}

int argmax_magnitude(const Frame& bins) {
    int best = 0;
    double best_mag = std::norm(bins[0]);
    for (int n = 1; n < static_cast<int>(bins.size()); ++n) {
        const double mag = std::norm(bins[static_cast<size_t>(n)]);
        if (mag > best_mag) {
            best_mag = mag;
            best = n;
        }
    }
    return best;
}

int Modem::demodulate(const Frame& r) const {
    const Frame bins = dechirp_dft(r);
    return argmax_magnitude(bins);
}

} // namespace jamlab
