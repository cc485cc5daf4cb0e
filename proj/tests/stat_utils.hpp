#pragma once

// Test-side oracles: quadrature, distribution tests, and fits used to check
// the library against independent routes. Kept deliberately free of library
// numerics (no FFTs, no library integrators).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

inline double mean(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

inline double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

/// Trapezoid rule on uniformly spaced samples.
inline double trapezoid(const std::vector<double>& f, double dx) {
    double s = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
    return s * dx;
}

/// Composite Simpson quadrature of a callable on [a, b] (n even intervals).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// Kolmogorov-Smirnov statistic of samples against a CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(samples[i]);
        d = std::max(d, std::abs(c - i / n));
        d = std::max(d, std::abs((i + 1) / n - c));
    }
    return d;
}

/// True when the KS test does NOT reject at significance alpha (supported:
/// 0.01, 0.05), using the asymptotic critical value with Stephens' correction.
inline bool ks_passes(const std::vector<double>& samples, const std::function<double(double)>& cdf,
                      double alpha) {
    const double d = ks_statistic(std::vector<double>(samples), cdf);
    const double c_alpha = alpha == 0.01 ? 1.62762 : 1.35810;
    const double n = static_cast<double>(samples.size());
    const double scale = std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n);
    return d * scale < c_alpha;
}

/// chi^2 critical value at upper-tail probability alpha (Wilson-Hilferty).
inline double chi2_critical(int dof, double alpha) {
    const double z = alpha == 0.01 ? 2.32634787 : 1.64485363;  // 1% / 5%
    const double a = 2.0 / (9.0 * dof);
    const double t = 1.0 - a + z * std::sqrt(a);
    return dof * t * t * t;
}

/// Pearson chi^2 of observed counts against expected counts.
inline double chi2_statistic(const std::vector<double>& observed,
                             const std::vector<double>& expected) {
    double s = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double diff = observed[i] - expected[i];
        s += diff * diff / expected[i];
    }
    return s;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

/// Sample autocovariance at a given lag, averaged over independent rows of a
/// [rows x cols] matrix stored row-major.
inline double autocovariance(const std::vector<double>& data, int rows, int cols, int lag) {
    double s = 0.0;
    long long count = 0;
    for (int r = 0; r < rows; ++r) {
        const double* row = data.data() + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c + lag < cols; ++c) {
            s += row[c] * row[c + lag];
            ++count;
        }
    }
    return s / count;
}

}  // namespace oracle
