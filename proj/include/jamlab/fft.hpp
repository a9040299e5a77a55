#pragma once

#include <complex>
#include <vector>

namespace jamlab {

// Iterative radix-2 transform for power-of-two lengths. Frame lengths here
// are always 2^sf, so no mixed-radix support is needed. Unnormalized: forward
// computes X[n] = sum_k x[k] e^{-2pi j nk/N}; inverse computes
// x[k] = (1/N) sum_n X[n] e^{+2pi j nk/N}.
class FftPlan {
  public:
    explicit FftPlan(int n);

    int size() const { return n_; }

    void forward(std::complex<double>* data) const;
    void inverse(std::complex<double>* data) const;

    std::vector<std::complex<double>> forward(std::vector<std::complex<double>> data) const {
        forward(data.data());
        return data;
    }
    std::vector<std::complex<double>> inverse(std::vector<std::complex<double>> data) const {
        inverse(data.data());
        return data;
    }

  private:
    void transform(std::complex<double>* data, bool invert) const;

    int n_;
    int log2n_;
    std::vector<int> bitrev_;
    // Forward twiddles e^{-2pi j k/n}, k in [0, n/2).
    std::vector<std::complex<double>> tw_;
};

} // namespace jamlab
