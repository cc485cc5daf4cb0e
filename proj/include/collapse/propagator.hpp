#pragma once

#include "collapse/fft.hpp"
#include "collapse/hamiltonian.hpp"
#include "collapse/wavefunction.hpp"

namespace collapse {

/// Strang-split spectral propagator: exp(-i V dt/2) exp(-i T dt) exp(-i V dt/2)
/// with the kinetic factor applied exactly in Fourier space. Unitary by
/// construction; second order in dt for nonzero V, exact for a free particle.
/// Phase tables are precomputed per (grid, hamiltonian, dt); the object is
/// immutable after construction and safe to share across threads.
class Propagator {
public:
    Propagator(const Grid1D& grid, const Hamiltonian& h, double dt);

    double dt() const { return dt_; }
    const Fft& fft() const { return fft_; }

    void step_inplace(WaveFunction& psi) const;
    WaveFunction step(const WaveFunction& psi) const;

    /// Accuracy guideline: dt such that the kinetic phase at the band edge
    /// advances by at most max_phase (default 0.1 rad) per step.
    static double suggested_dt(const Grid1D& grid, const Hamiltonian& h, double max_phase = 0.1);

private:
    double dt_;
    Fft fft_;
    std::vector<std::complex<double>> exp_kinetic_;
    std::vector<std::complex<double>> exp_half_potential_;  // empty for V = 0
};

/// One Strang step (builds a throwaway plan; prefer Propagator in loops).
WaveFunction evolve_step(const WaveFunction& psi, const Hamiltonian& h, double dt);

/// Evolve to t_end in steps of dt, with a shorter final step when t_end is not
/// a multiple of dt. t_end = 0 returns the input unchanged.
WaveFunction evolve(const WaveFunction& psi, const Hamiltonian& h, double t_end, double dt);

}  // namespace collapse
