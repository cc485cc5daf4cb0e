#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "collapse/fft.hpp"
#include "collapse/grid.hpp"
#include "collapse/hamiltonian.hpp"

namespace collapse {

/// Complex amplitudes on a Grid1D. Value type: every operation returns a new
/// state, so ensembles can evolve copies concurrently without locking.
struct WaveFunction {
    Grid1D grid;
    std::vector<std::complex<double>> amp;

    WaveFunction(Grid1D g, std::vector<std::complex<double>> a);
};

struct ObservableSet {
    double norm;
    double mean_position;
    double mean_momentum;
    double position_variance;
    double energy;
};

/// sqrt of the position-space probability integral.
double norm(const WaveFunction& psi);

/// Returns psi scaled to unit norm; throws if the norm is numerically zero.
WaveFunction normalized(const WaveFunction& psi);
void normalize_inplace(WaveFunction& psi);

/// Normalized Gaussian psi ~ exp(-(x-center)^2/(2 width^2) + i momentum x).
/// With this convention the position variance is width^2/2.
/// The packet must be resolved (width > 2 dx) and supported well inside the box.
WaveFunction gaussian_packet(const Grid1D& grid, double center, double width, double momentum);

/// Normalized ca*a + cb*b. Grids must match; a vanishing resultant is an error.
WaveFunction superpose(const WaveFunction& a, const WaveFunction& b,
                       std::complex<double> ca, std::complex<double> cb);

/// Momentum-space amplitudes phi(k_j) = dx/sqrt(2 pi) * sum_m psi_m e^{-i k_j x_m},
/// in FFT bin order. With dk = 2 pi / L this makes sum |phi|^2 dk = sum |psi|^2 dx.
std::vector<std::complex<double>> momentum_representation(const WaveFunction& psi, const Fft& fft);

/// All observables in one pass; energy = spectral kinetic term + <V>.
ObservableSet observables(const WaveFunction& psi, const Hamiltonian& h, const Fft& fft);
ObservableSet observables(const WaveFunction& psi, const Hamiltonian& h);

double probability_in_halfline(const WaveFunction& psi, double x_from);

/// State dump, one "x re im" triple per line (columns in that order).
void dump_state(const WaveFunction& psi, std::ostream& os);

}  // namespace collapse
