#include "collapse/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collapse {

NoiseSpec::NoiseSpec(Kind kind_, double omega_c_, Grid1D grid_, double dt_, std::uint64_t seed_)
    : kind(kind_), omega_c(omega_c_), grid(grid_), dt(dt_), seed(seed_) {
    if (!(dt > 0.0)) throw std::invalid_argument("NoiseSpec: dt must be > 0");
    if (kind == Kind::exponential && !(omega_c > 0.0))
        throw std::invalid_argument("NoiseSpec: omega_c must be > 0 for exponential noise");
}

NoiseField::NoiseField(const NoiseSpec& spec, std::uint64_t stream_id)
    : spec_(spec), stream_id_(stream_id), rng_(spec.seed, stream_id),
      slice_(spec.grid.n_points, 0.0) {
    if (spec_.kind == NoiseSpec::Kind::exponential) {
        const double dx = spec_.grid.dx();
        ou_decay_ = std::exp(-spec_.omega_c * spec_.dt);
        ou_stat_std_ = std::sqrt(spec_.omega_c / (2.0 * dx));
        ou_kick_ = std::sqrt(1.0 - ou_decay_ * ou_decay_) * ou_stat_std_;
    }
}

const std::vector<double>& NoiseField::next_slice() {
    const int n = spec_.grid.n_points;
    if (spec_.kind == NoiseSpec::Kind::white) {
        const double sigma = 1.0 / std::sqrt(spec_.grid.dx() * spec_.dt);
        for (int j = 0; j < n; ++j) slice_[j] = sigma * rng_.normal();
    } else if (!started_) {
        for (int j = 0; j < n; ++j) slice_[j] = ou_stat_std_ * rng_.normal();
    } else {
        for (int j = 0; j < n; ++j)
            slice_[j] = ou_decay_ * slice_[j] + ou_kick_ * rng_.normal();
    }
    started_ = true;
    return slice_;
}

void NoiseField::reset() {
    rng_ = RngStream(spec_.seed, stream_id_);
    started_ = false;
    std::fill(slice_.begin(), slice_.end(), 0.0);
}

double colored_time_correlation(double t, double s, double omega_c) {
    if (!(omega_c > 0.0))
        throw std::invalid_argument("colored_time_correlation: omega_c must be > 0");
    return 0.5 * omega_c * std::exp(-omega_c * std::abs(t - s));
}

Smearer::Smearer(const Grid1D& grid, double r_c, Kernel kernel)
    : grid_(grid), fft_(grid.n_points), kernel_spectrum_(grid.n_points),
      scratch_(grid.n_points) {
    if (!(r_c >= grid.dx()))
        throw std::invalid_argument("Smearer: r_c under-resolved by grid (need r_c >= dx)");

    const double amplitude =
        kernel == Kernel::g1
            ? std::pow(std::numbers::pi * r_c * r_c, -0.25)
            : 1.0 / std::sqrt(2.0 * std::numbers::pi * r_c * r_c);

    self_overlap_ = 0.0;
    for (int j = 0; j < grid.n_points; ++j) {
        const double d = grid.periodic_distance(j);
        const double g = amplitude * std::exp(-d * d / (2.0 * r_c * r_c));
        kernel_spectrum_[j] = g;
        self_overlap_ += g * g * grid.dx();
    }
    fft_.forward(kernel_spectrum_);
}

void Smearer::apply(const std::vector<double>& in, std::vector<double>& out) {
    const int n = grid_.n_points;
    if (static_cast<int>(in.size()) != n)
        throw std::invalid_argument("Smearer: input length does not match grid");
    for (int j = 0; j < n; ++j) scratch_[j] = in[j];
    fft_.forward(scratch_);
    const double dx = grid_.dx();
    for (int j = 0; j < n; ++j) scratch_[j] *= kernel_spectrum_[j] * dx;
    fft_.inverse(scratch_);
    out.resize(n);
    for (int j = 0; j < n; ++j) out[j] = scratch_[j].real();
}

std::vector<double> Smearer::apply(const std::vector<double>& in) {
    std::vector<double> out;
    apply(in, out);
    return out;
}

std::vector<double> smear(const std::vector<double>& slice, const Grid1D& grid, double r_c) {
    Smearer s(grid, r_c, Smearer::Kernel::g1);
    return s.apply(slice);
}

}  // namespace collapse
