#include "collapse/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace collapse {

WaveFunction::WaveFunction(Grid1D g, std::vector<std::complex<double>> a)
    : grid(g), amp(std::move(a)) {
    if (static_cast<int>(amp.size()) != grid.n_points)
        throw std::invalid_argument("WaveFunction: amplitude length does not match grid");
    for (const auto& z : amp)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("WaveFunction: amplitudes must be finite");
}

double norm(const WaveFunction& psi) {
    double s = 0.0;
    for (const auto& z : psi.amp) s += std::norm(z);
    return std::sqrt(s * psi.grid.dx());
}

void normalize_inplace(WaveFunction& psi) {
    const double n = norm(psi);
    if (!(n > 1e-150)) throw std::runtime_error("normalize: vanishing state vector");
    const double inv = 1.0 / n;
    for (auto& z : psi.amp) z *= inv;
}

WaveFunction normalized(const WaveFunction& psi) {
    WaveFunction out = psi;
    normalize_inplace(out);
    return out;
}

WaveFunction gaussian_packet(const Grid1D& grid, double center, double width, double momentum) {
    const double dx = grid.dx();
    if (!(width > 2.0 * dx))
        throw std::invalid_argument("gaussian_packet: width under-resolved by grid (need > 2 dx)");
    if (center - 5.0 * width < grid.x_min || center + 5.0 * width > grid.x_max)
        throw std::invalid_argument("gaussian_packet: support not well inside the grid");

    std::vector<std::complex<double>> a(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.x(j);
        const double arg = (x - center) / width;
        const double env = std::exp(-0.5 * arg * arg);
        a[j] = std::polar(env, momentum * x);
    }
    WaveFunction psi(grid, std::move(a));
    normalize_inplace(psi);
    return psi;
}

WaveFunction superpose(const WaveFunction& a, const WaveFunction& b,
                       std::complex<double> ca, std::complex<double> cb) {
    if (!a.grid.same_as(b.grid))
        throw std::invalid_argument("superpose: grids do not match");
    std::vector<std::complex<double>> out(a.amp.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = ca * a.amp[j] + cb * b.amp[j];
    WaveFunction psi(a.grid, std::move(out));
    const double n = norm(psi);
    if (!(n > 1e-12 * (std::abs(ca) + std::abs(cb))))
        throw std::invalid_argument("superpose: resultant vector vanishes");
    normalize_inplace(psi);
    return psi;
}

std::vector<std::complex<double>> momentum_representation(const WaveFunction& psi, const Fft& fft) {
    std::vector<std::complex<double>> phi = psi.amp;
    fft.forward(phi);
    const double scale = psi.grid.dx() / std::sqrt(2.0 * std::numbers::pi);
    for (auto& z : phi) z *= scale;
    return phi;
}

ObservableSet observables(const WaveFunction& psi, const Hamiltonian& h, const Fft& fft) {
    const Grid1D& g = psi.grid;
    const double dx = g.dx();

    double p_total = 0.0, x_mean = 0.0, x2_mean = 0.0, v_mean = 0.0;
    const std::vector<double> v = h.potential_on(g);
    for (int j = 0; j < g.n_points; ++j) {
        const double p = std::norm(psi.amp[j]) * dx;
        const double x = g.x(j);
        p_total += p;
        x_mean += x * p;
        x2_mean += x * x * p;
        if (!v.empty()) v_mean += v[j] * p;
    }

    const auto phi = momentum_representation(psi, fft);
    const double dk = 2.0 * std::numbers::pi / g.length();
    double k_mean = 0.0, k2_mean = 0.0, k_total = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double q = std::norm(phi[j]) * dk;
        const double k = g.k(j);
        k_total += q;
        k_mean += k * q;
        k2_mean += k * k * q;
    }

    ObservableSet obs{};
    obs.norm = std::sqrt(p_total);
    if (p_total > 0.0) {
        x_mean /= p_total;
        x2_mean /= p_total;
        v_mean /= p_total;
        k_mean /= k_total;
        k2_mean /= k_total;
    }
    obs.mean_position = x_mean;
    obs.position_variance = std::max(0.0, x2_mean - x_mean * x_mean);
    obs.mean_momentum = k_mean;
    obs.energy = k2_mean / (2.0 * h.mass) + v_mean;
    return obs;
}

ObservableSet observables(const WaveFunction& psi, const Hamiltonian& h) {
    Fft fft(psi.grid.n_points);
    return observables(psi, h, fft);
}

double probability_in_halfline(const WaveFunction& psi, double x_from) {
    const double dx = psi.grid.dx();
    double s = 0.0, total = 0.0;
    for (int j = 0; j < psi.grid.n_points; ++j) {
        const double p = std::norm(psi.amp[j]) * dx;
        total += p;
        if (psi.grid.x(j) > x_from) s += p;
    }
    return total > 0.0 ? s / total : 0.0;
}

void dump_state(const WaveFunction& psi, std::ostream& os) {
    char line[96];
    for (int j = 0; j < psi.grid.n_points; ++j) {
        std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", psi.grid.x(j),
                      psi.amp[j].real(), psi.amp[j].imag());
        os << line;
    }
}

}  // namespace collapse
