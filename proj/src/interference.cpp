#include "jamlab/interference.hpp"

#include "jamlab/jammer.hpp"

#include <cmath>
#include <numbers>

namespace jamlab {

Complex gqgs_closed_form(long long eta, long long eps, long long gamma) {
    // For |eta| > 1 the right-hand side below picks up a Jacobi-symbol factor
    // and this simple form is wrong (e.g. eta = -3, eps = 2, gamma = 8), so
    // only the unit cases are served.
    if (eta != 1 && eta != -1)
        throw std::domain_error("gqgs closed form requires eta = +1 or -1");
    if ((eps % 2) != 0)
        throw std::domain_error("gqgs closed form requires even eps");
    if (gamma < 4 || (gamma & (gamma - 1)) != 0)
        throw std::domain_error("gqgs closed form requires gamma a power of two >= 4");
    const long long half = eps / 2;
    if (std::llabs(half) > (1LL << 30) || std::llabs(eta) > (1LL << 30))
        throw std::invalid_argument("gqgs arguments out of supported range");

    // Phase term e(-(eps^2/4) / (eta gamma)): an exact rational number of
    // turns, reduced mod 1 in integer arithmetic.
    long long num = -half * half;
    long long den = eta * gamma;
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long r = num % den;
    if (r < 0) r += den;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(den);

    static const Complex j_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex je = j_pow[((eta % 4) + 4) % 4];
    return std::polar(std::sqrt(static_cast<double>(gamma)), ang) * (Complex{1, 0} + je);
}

Frame tone_spectrum_closed(const LoRaParams& p, const ToneJammerSpec& spec) {
    spec.validate(p);
    if (!spec.integer_tones())
        throw std::domain_error(
            "closed-form tone spectrum requires integer tone frequencies; "
            "use tone_spectrum_numeric for fractional tones");
    const double amp = std::sqrt(spec.sigma_j_sq / spec.v());
    Frame s(static_cast<size_t>(p.m), Complex{0.0, 0.0});
    for (int v = 0; v < spec.v(); ++v) {
        const long long uv = std::llround(spec.u[static_cast<size_t>(v)]);
        const Complex coeff = std::polar(amp, spec.phi[static_cast<size_t>(v)]) * 0.5;
        for (int n = 0; n < p.m; ++n) {
            const long long eps = p.m + 2 * uv - 2 * n;
            s[static_cast<size_t>(n)] += coeff * gqgs_closed_form(-1, eps, 2LL * p.m);
        }
    }
    return s;
}

Frame tone_spectrum_numeric(const Modem& modem, const ToneJammerSpec& spec) {
    return modem.dechirp_dft(gen_tone_jam(modem.params(), spec));
}

ExtremalSymbols extremal_symbols(const Frame& spectrum) {
    ExtremalSymbols out;
    double re_max = spectrum[0].real();
    double re_min = spectrum[0].real();
    for (int n = 1; n < static_cast<int>(spectrum.size()); ++n) {
        const double re = spectrum[static_cast<size_t>(n)].real();
        if (re > re_max) {
            re_max = re;
            out.a_max = n;
        }
        if (re < re_min) {
            re_min = re;
            out.a_min = n;
        }
    }
    out.gamma_plus = std::abs(spectrum[static_cast<size_t>(out.a_max)]);
    out.gamma_minus = std::abs(spectrum[static_cast<size_t>(out.a_min)]);
    return out;
}

} // namespace jamlab
