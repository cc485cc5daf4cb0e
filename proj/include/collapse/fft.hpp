#pragma once

#include <complex>
#include <vector>

namespace collapse {

/// Plan-based iterative radix-2 FFT for power-of-two sizes. Tables are built
/// once at construction; transforms are in-place and const, so one plan can be
/// shared read-only across threads. inverse() includes the 1/n scale, making
/// forward+inverse an exact round trip up to rounding.
class Fft {
public:
    explicit Fft(int n);

    int size() const { return n_; }

    void forward(std::vector<std::complex<double>>& a) const { transform(a, false); }
    void inverse(std::vector<std::complex<double>>& a) const { transform(a, true); }

private:
    void transform(std::vector<std::complex<double>>& a, bool inverse) const;

    int n_;
    std::vector<int> bitrev_;
    std::vector<std::complex<double>> twiddle_;  // exp(-2*pi*i*j/n), j < n/2
};

}  // namespace collapse
