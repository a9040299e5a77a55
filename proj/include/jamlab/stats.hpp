#pragma once

#include "jamlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace jamlab {

// Sequential factorial x!^(c) = 1 (1+c) (1+2c) ... x. Requires x >= 1 and
// x == 1 (mod c); c = 1 recovers the ordinary factorial, c = 2 the odd
// double factorial. Exact in integer arithmetic while the product fits,
// log-domain beyond.
double seq_factorial(long long x, long long c);
double seq_factorial_log(long long x, long long c);

// Scale parameter of the small-argument approximation to the sum of L iid
// unit Rayleigh variates, on the t = t_h/sqrt(L) axis:
//   b = (1/L) ((2L-1)!^(2))^(1/L).
double saa_b_h0(int l);

// Small-argument-approximation distribution of the scaled sum of L Rayleigh
// magnitudes: f(t) = t^(2L-1) e^(-t^2/(2b)) / (2^(L-1) b^L (L-1)!).
// Note b enters as a variance-like parameter (not squared).
struct SaaSumDist {
    int l = 1;
    double b = 1.0;
};

double saa_pdf(const SaaSumDist& d, double t);
// F(t) = 1 - e^(-s) sum_{l<L} s^l/l!, s = t^2/(2b): the regularized lower
// incomplete gamma P(L, s), computed to full relative accuracy in both tails.
double saa_cdf(const SaaSumDist& d, double t);
double saa_quantile(const SaaSumDist& d, double p);

// Rayleigh with scale b: pdf (t/b^2) e^(-t^2/(2b^2)).
double rayleigh_pdf(double b, double t);
double rayleigh_cdf(double b, double t);
double rayleigh_quantile(double b, double p);
double rayleigh_sample(double b, Rng& rng);

// Rice distribution of |mu + n| with n circular complex Gaussian of
// per-component std dev sigma.
double rician_pdf(double mu, double sigma, double t);
double rician_sample(double mu, double sigma, Rng& rng);

// log I0(x), the modified Bessel function of order zero, overflow-safe.
double log_bessel_i0(double x);

// Standard normal CDF.
double normal_cdf(double x);

// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

// Half-width of a 95% binomial proportion confidence interval for k
// successes in n trials. Normal approximation when both tails hold at least
// 20 events; exact Clopper-Pearson otherwise (half-width is the larger
// deviation of the exact interval from k/n).
double binomial_ci_halfwidth(long long k, long long n);

// Two-sided Kolmogorov-Smirnov distance between a sample and a CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

} // namespace jamlab
