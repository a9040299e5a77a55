#pragma once

#include "jamlab/fft.hpp"
#include "jamlab/types.hpp"

namespace jamlab {

// Chirp-spread-spectrum baseband frame for symbol a, M samples, unit power:
//   x_a[k] = exp(2 pi j k (a/M - 1/2 + k/(2M))),  k = 0..M-1.
Frame modulate(const LoRaParams& p, int a);

// Conjugate base chirp; multiplying a received frame by this removes the
// quadratic phase so the symbol appears as a pure DFT tone.
Frame downchirp(const LoRaParams& p);

// Caches the DFT plan and the downchirp for repeated frame processing.
class Modem {
  public:
    explicit Modem(LoRaParams p);

    const LoRaParams& params() const { return p_; }
    const FftPlan& plan() const { return plan_; }

    Frame modulate(int a) const { return jamlab::modulate(p_, a); }

    // Dechirped DFT of a received frame: R~[n] = DFT{r[k] x_0*[k]}[n].
    // A clean symbol a yields M at bin a and 0 elsewhere.
    Frame dechirp_dft(const Frame& r) const;

    // In-place variant over a caller-owned buffer of length M.
    void dechirp_dft_inplace(Complex* r) const;

    // Noncoherent detection: argmax_n |R~[n]|, ties to the lowest index.
    int demodulate(const Frame& r) const;

  private:
    LoRaParams p_;
    FftPlan plan_;
    Frame down_;
};

// Index of the maximum magnitude, ties resolved to the lowest index.
int argmax_magnitude(const Frame& bins);

} // namespace jamlab
