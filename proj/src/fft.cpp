#include "collapse/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collapse {

Fft::Fft(int n) : n_(n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw std::invalid_argument("Fft: size must be a power of two >= 2");

    bitrev_.resize(n);
    int log2n = 0;
    while ((1 << log2n) < n) ++log2n;
    for (int i = 0; i < n; ++i) {
        int r = 0;
        for (int b = 0; b < log2n; ++b)
            if (i & (1 << b)) r |= 1 << (log2n - 1 - b);
        bitrev_[i] = r;
    }

    twiddle_.resize(n / 2);
    for (int j = 0; j < n / 2; ++j) {
        const double ang = -2.0 * std::numbers::pi * j / n;
        twiddle_[j] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft::transform(std::vector<std::complex<double>>& a, bool inverse) const {
    if (static_cast<int>(a.size()) != n_)
        throw std::invalid_argument("Fft: buffer size does not match plan");

    for (int i = 0; i < n_; ++i) {
        const int r = bitrev_[i];
        if (i < r) std::swap(a[i], a[r]);
    }

    for (int len = 2; len <= n_; len <<= 1) {
        const int half = len / 2;
        const int stride = n_ / len;
        for (int base = 0; base < n_; base += len) {
            for (int j = 0; j < half; ++j) {
                std::complex<double> w = twiddle_[j * stride];
                if (inverse) w = std::conj(w);
                const std::complex<double> u = a[base + j];
                const std::complex<double> v = a[base + j + half] * w;
                a[base + j] = u + v;
                a[base + j + half] = u - v;
            }
        }
    }

    if (inverse) {
        const double scale = 1.0 / n_;
        for (auto& z : a) z *= scale;
    }
}

}  // namespace collapse
