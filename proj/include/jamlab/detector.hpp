#pragma once

#include "jamlab/rng.hpp"
#include "jamlab/stats.hpp"
#include "jamlab/types.hpp"

#include <stdexcept>
#include <vector>

namespace jamlab {

// Which bins are removed from the candidate set before the random subset of
// L bins is drawn. The demodulated peak always holds the (possible) symbol;
// the per-bin threshold removes bins individually too energetic to be noise.
enum class EliminationPolicy { none, peak_only, threshold_only, threshold_and_peak };

struct DetectorConfig {
    int l = 4;
    // Per-bin false-alarm rate of the elimination threshold.
    double pfa = 1e-3;
    // Frame-level false-alarm target of the sum test.
    double pfa_saa = 1e-5;
    // Receiver's noise-floor knowledge (true value or estimate_noise_floor).
    double sigma_sq = 1.0;
    EliminationPolicy policy = EliminationPolicy::threshold_and_peak;

    void validate(const LoRaParams& p) const {
        if (l < 1 || l > p.m - 1)
            throw std::invalid_argument("detector L must be in [1, M-1]");
        if (!(pfa > 0.0 && pfa < 1.0))
            throw std::invalid_argument("detector pfa must be in (0, 1)");
        if (!(pfa_saa > 0.0 && pfa_saa < 1.0))
            throw std::invalid_argument("detector pfa_saa must be in (0, 1)");
        if (!(sigma_sq > 0.0))
            throw std::invalid_argument("detector sigma_sq must be > 0");
    }
};

struct Decision {
    double z = 0.0;
    double threshold = 0.0;
    bool jammed = false;
    int n_eliminated = 0;
    std::vector<int> bins;
};

// Raised when elimination leaves fewer than L candidate bins; the harness
// counts such frames as voided rather than deciding on partial sums.
class insufficient_bins_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Mean per-sample power over calibration frames known to be noise-only;
// unbiased for circular complex Gaussian noise.
double estimate_noise_floor(const std::vector<Frame>& h0_frames);

// Energy detector on the dechirped DFT: z = (1/sqrt(L)) sum_l |R~[n_l]| / b,
// b = sqrt(M sigma^2 / 2), over L bins drawn uniformly from the candidates
// that survive elimination. Declares a jammer when z meets the quantile of
// the L-fold Rayleigh-sum small-argument approximation at 1 - pfa_saa.
class Detector {
  public:
    Detector(LoRaParams p, DetectorConfig cfg);

    const LoRaParams& params() const { return p_; }
    const DetectorConfig& config() const { return cfg_; }

    double b_x_h0() const { return b_x_; }
    double bin_threshold() const { return lambda_bin_; }
    double decision_threshold() const { return lambda_; }

    struct Statistic {
        double z = 0.0;
        int n_eliminated = 0;
        std::vector<int> bins;
    };

    Statistic compute_statistic(const Frame& dechirped, Rng& rng) const;
    Decision detect(const Frame& dechirped, Rng& rng) const;

  private:
    LoRaParams p_;
    DetectorConfig cfg_;
    double b_x_;
    double lambda_bin_;
    double lambda_;
};

// Closed-form miss probability against a band jammer: the sum keeps its SAA
// shape with scale inflated by the per-bin jam power, evaluated at the H0
// threshold. Holds for any rho (the dechirped image of a band jammer is
// spectrally flat).
double pmd_theory_band(const LoRaParams& p, const DetectorConfig& cfg, double sigma_j_sq);

// Single-tone theory: Gaussian approximation of the Rician sum (used when
// the jammer is at or above the noise floor, NJR_dB <= 0) and the H0 SAA
// fallback for weak jammers. `selected` follows the regime switch.
struct StjTheory {
    double selected = 0.0;
    double gaussian = 0.0;
    double saa_h0 = 0.0;
};

StjTheory pmd_theory_single_tone(const LoRaParams& p, const DetectorConfig& cfg,
                                 double sigma_j_sq);

// Multitone theory: empirical CDF at the threshold of the exact per-frame
// statistic with tone phases redrawn each draw, noise included, no frame
// simulation (bin images enter through the closed/numeric tone spectrum).
double pmd_theory_multitone(const LoRaParams& p, const DetectorConfig& cfg,
                            const ToneJammerSpec& spec, long long n_draws,
                            std::uint64_t seed);

} // namespace jamlab
