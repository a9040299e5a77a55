#pragma once

// Shared test oracles. These stay deliberately naive and independent of the
// library's computation paths: direct O(M^2) transforms, literal sums, and
// Simpson quadrature.

#include <complex>
#include <functional>
#include <numbers>
#include <vector>

inline std::vector<std::complex<double>> dft_direct(
    const std::vector<std::complex<double>>& x) {
    const size_t n = x.size();
    std::vector<std::complex<double>> out(n);
    for (size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) /
                               static_cast<double>(n);
            acc += x[j] * std::complex<double>{std::cos(ang), std::sin(ang)};
        }
        out[k] = acc;
    }
    return out;
}

// Literal generalized quadratic Gauss sum over all gamma terms.
inline std::complex<double> gauss_sum_direct(long long eta, long long eps, long long gamma) {
    std::complex<double> acc{0.0, 0.0};
    for (long long x = 0; x < gamma; ++x) {
        long long num = (eta % gamma) * ((x * x) % gamma) % gamma + (eps % gamma) * x % gamma;
        num %= gamma;
        if (num < 0) num += gamma;
        const double ang =
            2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(gamma);
        acc += std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    return acc;
}

// Direct per-bin dechirped sum of an arbitrary time frame (no FFT).
inline std::vector<std::complex<double>> dechirp_direct(
    const std::vector<std::complex<double>>& frame) {
    const size_t m = frame.size();
    std::vector<std::complex<double>> down(m);
    for (size_t k = 0; k < m; ++k) {
        // conj of the base chirp: exponent -(k^2/(2M) - k/2) turns.
        const double turns = -(static_cast<double>(k) * static_cast<double>(k) /
                                   (2.0 * static_cast<double>(m)) -
                               static_cast<double>(k) / 2.0);
        const double ang = 2.0 * std::numbers::pi * turns;
        down[k] = std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> mixed(m);
    for (size_t k = 0; k < m; ++k) mixed[k] = frame[k] * down[k];
    return dft_direct(mixed);
}

// Composite Simpson rule on [a, b] with n subintervals (n even).
inline double integrate(const std::function<double(double)>& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}
