#pragma once

#include <cstdint>
#include <vector>

#include "collapse/hamiltonian.hpp"
#include "collapse/rng.hpp"
#include "collapse/wavefunction.hpp"

namespace collapse {

struct CollapseEvent {
    double time;
    double center;
};

struct GrwConfig {
    double rate;       // collapse rate (use amplified_rate_grw for N particles)
    double r_c;
    double t_end;
    double dt;
    int sample_every = 1;  // record observables every this many dt steps
};

struct GrwTrajectory {
    std::vector<double> times;
    std::vector<ObservableSet> series;
    std::vector<CollapseEvent> events;
    WaveFunction final_state;
    std::uint64_t seed;
    std::uint64_t stream_id;
};

/// Homogeneous Poisson process on [0, t_end]: exponential inter-arrival gaps.
std::vector<double> sample_collapse_times(double rate, double t_end, RngStream& rng);

/// Localization hit: multiply by (pi r_c^2)^(-1/4) exp(-(x-a)^2 / 2 r_c^2), renormalize.
/// Throws if the localized branch weight underflows (|| L_a psi ||^2 < 1e-300).
WaveFunction apply_localization(const WaveFunction& psi, double a, double r_c);

/// || L_a psi ||^2 on the grid = (|psi|^2 * N(0, r_c^2/2))(a). With the 1D
/// prefactor above this is a normalized probability density in a.
std::vector<double> collapse_center_density(const WaveFunction& psi, double r_c);

/// Collapse-center sampler, ancestral form: draw x from |psi|^2, add a
/// N(0, (r_c/sqrt(2))^2) offset.
double sample_collapse_center(const WaveFunction& psi, double r_c, RngStream& rng);

/// Collapse-center sampler, direct form: inverse-CDF of the gridded convolved
/// density. Agrees with the ancestral sampler in distribution (tested).
double sample_collapse_center_cdf(const WaveFunction& psi, double r_c, RngStream& rng);

/// Full GRW dynamics: Schrodinger evolution interleaved with Poisson-timed
/// Gaussian localizations; observables recorded every sample_every steps.
GrwTrajectory run_grw_trajectory(const WaveFunction& psi0, const Hamiltonian& h,
                                 const GrwConfig& cfg, std::uint64_t seed,
                                 std::uint64_t stream_id);

/// Amplification for a rigid N-particle body: Lambda = N * lambda.
double amplified_rate_grw(long long n_particles, double lambda);

/// Off-diagonal decay rate of a superposition with separation d:
/// rate * (1 - exp(-d^2 / 4 r_c^2)).
double grw_decoherence_rate(double d, double rate, double r_c);

}  // namespace collapse
