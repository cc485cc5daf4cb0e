#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace collapse {

/// Uniform periodic 1D grid. x_j = x_min + j*dx for j = 0..n_points-1; the
/// point x_max is identified with x_min. n_points must be a power of two
/// (>= 8) so that spectral propagation applies without padding.
struct Grid1D {
    double x_min;
    double x_max;
    int n_points;

    Grid1D(double x_min_, double x_max_, int n)
        : x_min(x_min_), x_max(x_max_), n_points(n) {
        if (!(x_max > x_min)) throw std::invalid_argument("Grid1D: x_max must exceed x_min");
        if (n < 8 || (n & (n - 1)) != 0)
            throw std::invalid_argument("Grid1D: n_points must be a power of two >= 8");
    }

    double length() const { return x_max - x_min; }
    double dx() const { return length() / n_points; }
    double x(int j) const { return x_min + j * dx(); }

    /// Angular wavenumber in FFT bin order: k_j = 2*pi*j/L for j < n/2,
    /// negative frequencies for j >= n/2.
    double k(int j) const {
        const double dk = 2.0 * std::numbers::pi / length();
        return (j < n_points / 2) ? j * dk : (j - n_points) * dk;
    }

    std::vector<double> positions() const {
        std::vector<double> xs(n_points);
        for (int j = 0; j < n_points; ++j) xs[j] = x(j);
        return xs;
    }

    std::vector<double> wavenumbers() const {
        std::vector<double> ks(n_points);
        for (int j = 0; j < n_points; ++j) ks[j] = k(j);
        return ks;
    }

    /// Minimum-image distance from grid node j to node 0 (for periodic kernels).
    double periodic_distance(int j) const {
        const double d = j * dx();
        return std::min(d, length() - d);
    }

    bool same_as(const Grid1D& o) const {
        return x_min == o.x_min && x_max == o.x_max && n_points == o.n_points;
    }
};

}  // namespace collapse
