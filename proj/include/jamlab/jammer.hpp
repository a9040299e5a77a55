#pragma once

#include "jamlab/modem.hpp"
#include "jamlab/rng.hpp"
#include "jamlab/types.hpp"

#include <optional>

namespace jamlab {

// Single complex tone at cyclic frequency u/M, unit amplitude, zero phase.
Frame unit_tone_frame(const LoRaParams& p, double u);

// Multitone jammer frame: sum_v sqrt(sigma_j_sq/V) e^{2 pi j (u_v/M) k + j phi_v}.
// Deterministic given the spec (phases live in the spec, not the RNG).
Frame gen_tone_jam(const LoRaParams& p, const ToneJammerSpec& spec);

// Band jammer frame: K = ceil(rho M) adjacent DFT bins centered at
// round(nu_j M), loaded with iid circular Gaussians carrying total power
// sigma_j_sq, transformed to the time domain. rho = 1 degenerates to white
// complex Gaussian noise of variance sigma_j_sq.
Frame gen_band_jam(const LoRaParams& p, const BandJammerSpec& spec,
                   const FftPlan& plan, Rng& rng);

// Received frame under the given hypothesis:
//   h0: w                h1: x_a + w + s
//   h2: x_a + w          h3: w + s
// The symbol must be present exactly for h1/h2 and the jammer exactly for
// h1/h3; mismatches are domain errors. Noise draws come first, then any
// band-jammer draws, so equal-seed runs are paired across hypotheses.
Frame compose_received(const Modem& modem, Hypothesis h, std::optional<int> a,
                       const ChannelSpec& ch, const JammerSpec* jam, Rng& rng);

} // namespace jamlab
