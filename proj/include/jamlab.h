/* C API for the LoRa jamming laboratory. All functions return jl_status;
 * outputs go through pointers. Complex arrays are split into re/im double
 * arrays of length M = 2^sf. On any failure jl_last_error() returns a
 * thread-local description of what went wrong. */
#ifndef JAMLAB_H
#define JAMLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jl_status {
    JL_OK = 0,
    JL_ERR_INVALID_ARGUMENT = 1, /* parameter outside its range */
    JL_ERR_DOMAIN = 2,           /* operation not defined for these inputs */
    JL_ERR_VALIDATION = 3,       /* config rejected; jl_last_error names the field */
    JL_ERR_INSUFFICIENT_BINS = 4,
    JL_ERR_IO = 5,
    JL_ERR_RUNTIME = 6
} jl_status;

const char* jl_version(void);
/* Description of the last error on this thread; empty string if none. */
const char* jl_last_error(void);

/* ---- modem ---- */

/* Chirp frame for symbol a at spreading factor sf; re/im hold 2^sf samples. */
jl_status jl_modulate(int sf, int symbol, double* re, double* im);
jl_status jl_downchirp(int sf, double* re, double* im);
/* Dechirp + DFT of a received frame (in place over re/im). */
jl_status jl_dechirp_dft(int sf, double* re, double* im);
jl_status jl_demodulate(int sf, const double* re, const double* im, int* symbol);

/* ---- jammer frame synthesis ---- */

/* hypothesis: 0 noise, 1 signal+jam, 2 signal, 3 jam. symbol is ignored
 * unless the hypothesis carries a signal. jammer_kind: 0 none, 1 band
 * (rho, nu_j), 2 tone (u/phi/v). Writes the received frame into re/im. */
jl_status jl_compose_received(int sf, int hypothesis, int symbol, double sigma_sq,
                              int jammer_kind, double rho, double nu_j,
                              double sigma_j_sq, const double* u, const double* phi,
                              int v, uint64_t seed, double* re, double* im);

/* ---- interference closed forms ---- */

/* Generalized quadratic Gauss sum, closed form (eta = +/-1, eps even, gamma
 * a power of two >= 4). */
jl_status jl_gqgs(long long eta, long long eps, long long gamma_, double* re, double* im);

/* Dechirped image of a tone jammer over all M bins. force_numeric != 0
 * bypasses the closed form (required for fractional tone frequencies). */
jl_status jl_tone_spectrum(int sf, const double* u, const double* phi, int v,
                           double sigma_j_sq, int force_numeric, double* re, double* im);

/* Jammer-favored and jammer-hurt symbols of a tone jammer, with the spectrum
 * magnitudes at those bins. */
jl_status jl_extremal_symbols(int sf, const double* u, const double* phi, int v,
                              double sigma_j_sq, int* a_max, int* a_min,
                              double* gamma_plus, double* gamma_minus);

/* ---- detection statistics ---- */

double jl_saa_b_h0(int l);
jl_status jl_saa_cdf(int l, double b, double t, double* out);
jl_status jl_saa_quantile(int l, double b, double p, double* out);

/* Opaque jammer detector. elimination: 0 none, 1 peak, 2 threshold,
 * 3 threshold+peak. */
typedef struct jl_detector jl_detector;

typedef struct jl_decision {
    double z;
    double threshold;
    int jammed;
    int n_eliminated;
} jl_decision;

jl_status jl_detector_create(int sf, int l, double pfa, double pfa_saa,
                             double sigma_sq, int elimination, jl_detector** out);
void jl_detector_destroy(jl_detector* det);
/* Decide on a dechirped frame (length M). seed drives the random bin subset;
 * bins_used (length >= l, may be NULL) receives the chosen bins. */
jl_status jl_detector_detect(const jl_detector* det, const double* re, const double* im,
                             uint64_t seed, jl_decision* out, int* bins_used);

/* Closed-form / semi-analytic miss probabilities at the detector's operating
 * point. jammer_kind: 1 band, 2 tone (v == 1 uses the single-tone forms,
 * v > 1 runs n_draws phase draws with the given seed). */
jl_status jl_detector_pmd_theory(const jl_detector* det, int jammer_kind,
                                 double sigma_j_sq, const double* u, int v,
                                 long long n_draws, uint64_t seed, double* out);

/* ---- experiments ---- */

/* Validate a config document; on JL_ERR_VALIDATION the failing field is named
 * in jl_last_error(). On success writes the resolved document into buf
 * (truncated to buflen - 1, always NUL-terminated) if buf is non-NULL. */
jl_status jl_experiment_validate_text(const char* text, char* buf, size_t buflen);
jl_status jl_experiment_validate_file(const char* path, char* buf, size_t buflen);

/* Run a config and write <kind>.csv plus <kind>.manifest.ini into out_dir.
 * seed_override < 0 keeps the config's seed; fast <= 1 runs the full budget,
 * larger values divide trial counts; threads <= 0 picks 1. csv_path (may be
 * NULL) receives the CSV path, truncated to csv_path_len - 1. */
jl_status jl_experiment_run_text(const char* text, const char* out_dir,
                                 long long seed_override, long long fast, int threads,
                                 char* csv_path, size_t csv_path_len);
jl_status jl_experiment_run_file(const char* path, const char* out_dir,
                                 long long seed_override, long long fast, int threads,
                                 char* csv_path, size_t csv_path_len);

#ifdef __cplusplus
}
#endif

#endif /* JAMLAB_H */
