#include "collapse/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace collapse {

Propagator::Propagator(const Grid1D& grid, const Hamiltonian& h, double dt)
    : dt_(dt), fft_(grid.n_points) {
    if (!(dt > 0.0)) throw std::invalid_argument("Propagator: dt must be > 0");

    exp_kinetic_.resize(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) {
        const double k = grid.k(j);
        exp_kinetic_[j] = std::polar(1.0, -k * k / (2.0 * h.mass) * dt);
    }

    const std::vector<double> v = h.potential_on(grid);
    if (!v.empty()) {
        exp_half_potential_.resize(grid.n_points);
        for (int j = 0; j < grid.n_points; ++j)
            exp_half_potential_[j] = std::polar(1.0, -0.5 * v[j] * dt);
    }
}

void Propagator::step_inplace(WaveFunction& psi) const {
    auto& a = psi.amp;
    const int n = fft_.size();
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("Propagator: state does not match plan size");

    if (!exp_half_potential_.empty())
        for (int j = 0; j < n; ++j) a[j] *= exp_half_potential_[j];

    fft_.forward(a);
    for (int j = 0; j < n; ++j) a[j] *= exp_kinetic_[j];
    fft_.inverse(a);

    if (!exp_half_potential_.empty())
        for (int j = 0; j < n; ++j) a[j] *= exp_half_potential_[j];
}

WaveFunction Propagator::step(const WaveFunction& psi) const {
    WaveFunction out = psi;
    step_inplace(out);
    return out;
}

double Propagator::suggested_dt(const Grid1D& grid, const Hamiltonian& h, double max_phase) {
    const double k_max = std::numbers::pi / grid.dx();
    return max_phase * 2.0 * h.mass / (k_max * k_max);
}

WaveFunction evolve_step(const WaveFunction& psi, const Hamiltonian& h, double dt) {
    return Propagator(psi.grid, h, dt).step(psi);
}

WaveFunction evolve(const WaveFunction& psi, const Hamiltonian& h, double t_end, double dt) {
    if (t_end < 0.0) throw std::invalid_argument("evolve: t_end must be >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
    if (t_end == 0.0) return psi;

    const long long n_full = static_cast<long long>(std::floor(t_end / dt + 1e-9));
    const double remainder = t_end - n_full * dt;

    WaveFunction out = psi;
    if (n_full > 0) {
        Propagator prop(psi.grid, h, dt);
        for (long long i = 0; i < n_full; ++i) prop.step_inplace(out);
    }
    if (remainder > 1e-12 * dt) {
        Propagator tail(psi.grid, h, remainder);
        tail.step_inplace(out);
    }
    return out;
}

}  // namespace collapse
