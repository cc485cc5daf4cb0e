#pragma once

#include <cstdint>
#include <vector>

#include "collapse/fft.hpp"
#include "collapse/grid.hpp"
#include "collapse/rng.hpp"

namespace collapse {

/// Spatiotemporal noise driving the collapse dynamics. Cells are spatially
/// independent with the 1/dx density scaling of a discretized delta; spatial
/// correlation enters separately through the smearing operator.
///
/// white:       each slice is i.i.d. N(0, 1/(dx dt)) per cell.
/// exponential: per-cell stationary Ornstein-Uhlenbeck stream with time
///              correlation f(t,s) = (omega_c/2) exp(-omega_c |t-s|), so the
///              time integral of f is 1 and omega_c -> inf recovers white
///              statistics for integrated increments.
struct NoiseSpec {
    enum class Kind { white, exponential };

    Kind kind;
    double omega_c;  // cutoff, exponential only
    Grid1D grid;
    double dt;
    std::uint64_t seed;

    NoiseSpec(Kind kind_, double omega_c_, Grid1D grid_, double dt_, std::uint64_t seed_);

    static NoiseSpec white(Grid1D grid, double dt, std::uint64_t seed) {
        return NoiseSpec(Kind::white, 0.0, grid, dt, seed);
    }
    static NoiseSpec exponential(double omega_c, Grid1D grid, double dt, std::uint64_t seed) {
        return NoiseSpec(Kind::exponential, omega_c, grid, dt, seed);
    }
};

/// Single-consumer stream of noise slices. Concurrent trajectories use
/// independent instances keyed by (spec.seed, stream_id).
class NoiseField {
public:
    explicit NoiseField(const NoiseSpec& spec, std::uint64_t stream_id = 0);

    const NoiseSpec& spec() const { return spec_; }

    /// Advances the stream and returns the slice for the next time step.
    const std::vector<double>& next_slice();

    void reset();

private:
    NoiseSpec spec_;
    std::uint64_t stream_id_;
    RngStream rng_;
    std::vector<double> slice_;
    bool started_ = false;
    double ou_decay_ = 0.0;    // exp(-omega_c dt)
    double ou_kick_ = 0.0;     // sqrt(1 - decay^2) * stationary std
    double ou_stat_std_ = 0.0; // sqrt(omega_c / (2 dx))
};

/// Stationary time-correlation of the exponential (colored) noise:
/// f(t,s) = (omega_c/2) exp(-omega_c |t-s|).
double colored_time_correlation(double t, double s, double omega_c);

/// Spectral circular convolution with a Gaussian kernel of width r_c.
/// Amplitude conventions:
///   g1:        (pi r_c^2)^(-1/4) exp(-x^2 / 2 r_c^2)  — the smearing function;
///              its self-overlap integral is exactly exp(-u^2/4r_c^2).
///   unit_mass: (2 pi r_c^2)^(-1/2) exp(-x^2 / 2 r_c^2) — integrates to 1,
///              used for probability-density smearing.
/// apply() reuses internal scratch, so each instance is single-thread.
class Smearer {
public:
    enum class Kernel { g1, unit_mass };

    Smearer(const Grid1D& grid, double r_c, Kernel kernel = Kernel::g1);

    void apply(const std::vector<double>& in, std::vector<double>& out);
    std::vector<double> apply(const std::vector<double>& in);

    /// Discrete kernel self-overlap sum g^2 dx (equals 1 up to grid error for g1).
    double kernel_self_overlap() const { return self_overlap_; }

private:
    Grid1D grid_;
    Fft fft_;
    std::vector<std::complex<double>> kernel_spectrum_;
    std::vector<std::complex<double>> scratch_;
    double self_overlap_;
};

/// One-shot smear with the g1 kernel; r_c must be >= dx.
std::vector<double> smear(const std::vector<double>& slice, const Grid1D& grid, double r_c);

}  // namespace collapse
