#include "jamlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace jamlab {

namespace {

void check_seq_factorial_args(long long x, long long c) {
    if (c < 1) throw std::invalid_argument("seq_factorial step c must be >= 1");
    if (x < 1) throw std::invalid_argument("seq_factorial requires x >= 1");
    if ((x - 1) % c != 0)
        throw std::invalid_argument("seq_factorial requires x == 1 (mod c)");
}

} // namespace

double seq_factorial(long long x, long long c) {
    check_seq_factorial_args(x, c);
    long long acc = 1;
    const long long cap = 1LL << 62;
    for (long long f = 1 + c; f <= x; f += c) {
        if (acc > cap / f) return std::exp(seq_factorial_log(x, c));
        acc *= f;
    }
    return static_cast<double>(acc);
}

double seq_factorial_log(long long x, long long c) {
    check_seq_factorial_args(x, c);
    double acc = 0.0;
    for (long long f = 1 + c; f <= x; f += c) acc += std::log(static_cast<double>(f));
    return acc;
}

double saa_b_h0(int l) {
    if (l < 1) throw std::invalid_argument("saa_b_h0 requires L >= 1");
    return std::exp(seq_factorial_log(2LL * l - 1, 2) / l) / l;
}

namespace {

void check_saa(const SaaSumDist& d) {
    if (d.l < 1) throw std::invalid_argument("SAA distribution requires L >= 1");
    if (!(d.b > 0.0)) throw std::invalid_argument("SAA distribution requires b > 0");
}

// Lower regularized incomplete gamma, series expansion (x < a + 1).
double gamma_p_series(double a, double x) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 1000; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma series failed to converge");
}

// Upper regularized incomplete gamma via Lentz continued fraction (x >= a+1).
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

} // namespace

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma_p requires a > 0");
    if (x < 0.0) throw std::invalid_argument("gamma_p requires x >= 0");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double saa_pdf(const SaaSumDist& d, double t) {
    check_saa(d);
    if (t <= 0.0) return 0.0;
    const double logf = (2.0 * d.l - 1.0) * std::log(t) - t * t / (2.0 * d.b) -
                        (d.l - 1.0) * std::numbers::ln2 - d.l * std::log(d.b) -
                        std::lgamma(static_cast<double>(d.l));
    return std::exp(logf);
}

double saa_cdf(const SaaSumDist& d, double t) {
    check_saa(d);
    if (t <= 0.0) return 0.0;
    return gamma_p(static_cast<double>(d.l), t * t / (2.0 * d.b));
}

double saa_quantile(const SaaSumDist& d, double p) {
    check_saa(d);
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("saa_quantile requires p in [0, 1)");
    if (p == 0.0) return 0.0;
    double lo = 0.0;
    double hi = std::sqrt(2.0 * d.b * d.l) + 10.0 * std::sqrt(d.b);
    while (saa_cdf(d, hi) < p) {
        hi *= 2.0;
        if (hi > 1e12) throw std::runtime_error("saa_quantile bracket failed");
    }
    for (int i = 0; i < 200 && (hi - lo) > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (saa_cdf(d, mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double rayleigh_pdf(double b, double t) {
    if (!(b > 0.0)) throw std::invalid_argument("rayleigh scale must be > 0");
    if (t <= 0.0) return 0.0;
    return t / (b * b) * std::exp(-t * t / (2.0 * b * b));
}

double rayleigh_cdf(double b, double t) {
    if (!(b > 0.0)) throw std::invalid_argument("rayleigh scale must be > 0");
    if (t <= 0.0) return 0.0;
    return -std::expm1(-t * t / (2.0 * b * b));
}

double rayleigh_quantile(double b, double p) {
    if (!(b > 0.0)) throw std::invalid_argument("rayleigh scale must be > 0");
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("rayleigh_quantile requires p in [0, 1)");
    return b * std::sqrt(-2.0 * std::log1p(-p));
}

double rayleigh_sample(double b, Rng& rng) {
    return rayleigh_quantile(b, rng.uniform());
}

double log_bessel_i0(double x) {
    const double ax = std::abs(x);
    if (ax < 3.75) {
        const double y = (ax / 3.75) * (ax / 3.75);
        const double p = 1.0 + y * (3.5156229 + y * (3.0899424 + y * (1.2067492 +
                         y * (0.2659732 + y * (0.0360768 + y * 0.0045813)))));
        return std::log(p);
    }
    const double y = 3.75 / ax;
    const double p = 0.39894228 + y * (0.01328592 + y * (0.00225319 +
                     y * (-0.00157565 + y * (0.00916281 + y * (-0.02057706 +
                     y * (0.02635537 + y * (-0.01647633 + y * 0.00392377)))))));
    return ax - 0.5 * std::log(ax) + std::log(p);
}

double rician_pdf(double mu, double sigma, double t) {
    if (!(sigma > 0.0)) throw std::invalid_argument("rician sigma must be > 0");
    if (mu < 0.0) throw std::invalid_argument("rician mu must be >= 0");
    if (t <= 0.0) return 0.0;
    const double s2 = sigma * sigma;
    const double logf = std::log(t / s2) - (t * t + mu * mu) / (2.0 * s2) +
                        log_bessel_i0(t * mu / s2);
    return std::exp(logf);
}

double rician_sample(double mu, double sigma, Rng& rng) {
    if (!(sigma > 0.0)) throw std::invalid_argument("rician sigma must be > 0");
    if (mu < 0.0) throw std::invalid_argument("rician mu must be >= 0");
    // |mu + n| with n ~ CN(0, 2 sigma^2): per-component variance sigma^2.
    return std::abs(mu + rng.cnormal(2.0 * sigma * sigma));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace {

double log_binom_pmf(long long n, long long i, double p) {
    return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) +
           i * std::log(p) + (n - i) * std::log1p(-p);
}

// P(X <= k) for X ~ Binomial(n, p); intended for small k only.
double binom_cdf_lower(long long n, long long k, double p) {
    if (p <= 0.0) return 1.0;
    if (p >= 1.0) return k >= n ? 1.0 : 0.0;
    double sum = 0.0;
    for (long long i = 0; i <= k; ++i) sum += std::exp(log_binom_pmf(n, i, p));
    return std::min(sum, 1.0);
}

// Smallest p with P(X <= k; p) <= target (the function is decreasing in p).
double solve_upper(long long n, long long k, double target) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (binom_cdf_lower(n, k, mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

double binomial_ci_halfwidth(long long k, long long n) {
    if (n < 1) throw std::invalid_argument("binomial CI requires n >= 1");
    if (k < 0 || k > n) throw std::invalid_argument("binomial CI requires 0 <= k <= n");
    const double z = 1.959963984540054;
    const double alpha = 0.05;
    const double phat = static_cast<double>(k) / n;
    if (k >= 20 && n - k >= 20)
        return z * std::sqrt(phat * (1.0 - phat) / n);
    // Exact Clopper-Pearson on whichever tail is small; mirror if needed.
    if (n - k < 20 && k >= 20) return binomial_ci_halfwidth(n - k, n);
    const double hi = solve_upper(n, k, alpha / 2.0);
    const double lo = k == 0 ? 0.0 : 1.0 - solve_upper(n, n - k, alpha / 2.0);
    return std::max(hi - phat, phat - lo);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_statistic requires samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

} // namespace jamlab
