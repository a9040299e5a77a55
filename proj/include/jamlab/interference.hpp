#pragma once

#include "jamlab/modem.hpp"
#include "jamlab/types.hpp"

namespace jamlab {

// Generalized quadratic Gauss sum G(eta, eps, gamma) = sum_{x=0}^{gamma-1}
// e((eta x^2 + eps x)/gamma) with e(x) = e^{2 pi j x}, evaluated in closed
// form. Valid for eta = +/-1, eps even, gamma a power of two >= 4:
//   G = e(-(eps^2/4eta)/gamma) (1 + j^eta) sqrt(gamma).
// Other odd eta would need an extra Jacobi-symbol factor, so they are
// rejected. The phase is reduced as an exact integer rational before the
// trig call.
Complex gqgs_closed_form(long long eta, long long eps, long long gamma);

// Dechirped-DFT image of a tone jammer, closed form. Each tone contributes
// e^{j phi_v} sqrt(sigma_j_sq/V) G(-1, M + 2 u_v - 2n, 2M) / 2 at bin n; the
// half factor accounts for the sum running over M samples, not 2M. Integer
// tone frequencies only; fractional u_v is a domain error directing the
// caller to tone_spectrum_numeric.
Frame tone_spectrum_closed(const LoRaParams& p, const ToneJammerSpec& spec);

// Same image computed by actually dechirping the generated jammer frame.
// Serves fractional u_v and doubles as the cross-check for the closed form.
Frame tone_spectrum_numeric(const Modem& modem, const ToneJammerSpec& spec);

// Symbols whose decision bins the jammer helps most and hurts most: extrema
// of Re{S~[n]} over bins, ties to the lowest index. gamma_plus/gamma_minus
// are the spectrum magnitudes at those bins (for a single integer tone both
// equal sqrt(M sigma_j_sq) exactly).
struct ExtremalSymbols {
    int a_max = 0;
    int a_min = 0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
};

ExtremalSymbols extremal_symbols(const Frame& spectrum);

} // namespace jamlab
