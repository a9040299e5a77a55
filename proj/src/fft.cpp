#include "jamlab/fft.hpp"

#include <numbers>
#include <stdexcept>

namespace jamlab {

FftPlan::FftPlan(int n) : n_(n) {
    if (n < 1 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft length must be a power of two");
    log2n_ = 0;
    while ((1 << log2n_) < n_) ++log2n_;

    bitrev_.resize(n_);
    for (int i = 0; i < n_; ++i) {
        int r = 0;
        for (int b = 0; b < log2n_; ++b) r |= ((i >> b) & 1) << (log2n_ - 1 - b);
        bitrev_[i] = r;
    }

    tw_.resize(n_ / 2);
    for (int k = 0; k < n_ / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * k / n_;
        tw_[k] = {std::cos(ang), std::sin(ang)};
    }
    if (n_ == 1) tw_.push_back({1.0, 0.0});
}

void FftPlan::transform(std::complex<double>* data, bool invert) const {
    for (int i = 0; i < n_; ++i) {
        const int j = bitrev_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (int len = 2; len <= n_; len <<= 1) {
        const int half = len >> 1;
        const int stride = n_ / len;
        for (int base = 0; base < n_; base += len) {
            for (int k = 0; k < half; ++k) {
                std::complex<double> w = tw_[k * stride];
                if (invert) w = std::conj(w);
                const std::complex<double> t = w * data[base + half + k];
                const std::complex<double> u = data[base + k];
                data[base + k] = u + t;
                data[base + half + k] = u - t;
            }
        }
    }
}

void FftPlan::forward(std::complex<double>* data) const { transform(data, false); }

void FftPlan::inverse(std::complex<double>* data) const {
    transform(data, true);
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) data[i] *= scale;
}

} // namespace jamlab
