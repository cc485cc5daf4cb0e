#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "collapse/hamiltonian.hpp"
#include "collapse/noise.hpp"
#include "collapse/params.hpp"
#include "collapse/propagator.hpp"
#include "collapse/wavefunction.hpp"

namespace collapse {

/// Smeared probability density <M(x)>/m: |psi|^2 convolved with a unit-mass
/// Gaussian of width r_c. Non-negative and integrates to 1 for normalized psi.
struct MassDensityProfile {
    Grid1D grid;
    std::vector<double> values;
};

MassDensityProfile smeared_density(const WaveFunction& psi, double r_c);

/// Rigid-body description entering the CSL amplification factor.
struct RigidBodyGeometry {
    double n_nucleons;
    double size;                    // characteristic linear size
    double interparticle_distance;  // mean nucleon spacing (cubic-cell convention)

    RigidBodyGeometry(double n, double size_, double d_ip);
};

/// Collapse part of the CSL dynamics in the single-particle 1D reduction:
/// M(x) acts as multiplication by m * g1(x - y). With the g1 amplitude the
/// kernel self-overlap is 1, so the effective coupling is
/// lambda_eff = lambda (m/m0)^2 and the off-diagonal decay kernel matches the
/// GRW form lambda_eff (1 - exp(-(y-y')^2 / 4 r_c^2)).
///
/// Holds FFT plans and scratch: one stepper per trajectory/thread.
class CslStepper {
public:
    enum class Scheme { nonlinear, linear };

    CslStepper(const Grid1D& grid, const Hamiltonian& h, const CollapseParams& params,
               double mass_ratio, double dt, Scheme scheme);

    Scheme scheme() const { return scheme_; }
    double dt() const { return prop_.dt(); }
    double lambda_eff() const { return lambda_eff_; }
    const Fft& fft() const { return prop_.fft(); }

    /// One step: exact Strang Hamiltonian substep, then the collapse substep.
    /// nonlinear: Euler-Maruyama step of the norm-preserving CSL equation
    ///   (noise term + quadratic compensator), followed by renormalization.
    ///   Requires a white noise slice. Weak-error step bound: lambda_eff*dt <= 1e-3.
    ///   Pre-renormalization norm error is O(lambda_eff*dt) for delocalized
    ///   states (so the 1e-9 per-step level needs lambda_eff*dt <~ 5e-10).
    /// linear: random-unitary phase exp(+i sqrt(lambda_eff) (g*dW)(y)); norm is
    ///   preserved exactly. Colored slices permitted (first order in lambda);
    ///   keep omega_c * dt <~ 1 so the step resolves the noise correlation time.
    void step_inplace(WaveFunction& psi, const std::vector<double>& noise_slice);

    /// Pre-renormalization norm from the latest nonlinear step.
    double last_step_norm() const { return last_norm_; }

private:
    Scheme scheme_;
    double lambda_eff_;
    double sqrt_lambda_eff_;
    Propagator prop_;
    Smearer smear_g1_;
    double g0_;  // discrete kernel self-overlap, = 1 up to grid error
    std::vector<double> density_, mu_, g_mu_, g_dw_, scratch_;
    double last_norm_ = 1.0;
};

/// Free-function forms of the single-step integrators.
WaveFunction evolve_nonlinear_step(const WaveFunction& psi, const Hamiltonian& h,
                                   const std::vector<double>& noise_slice,
                                   const CollapseParams& params, double mass_ratio, double dt);
WaveFunction evolve_linear_step(const WaveFunction& psi, const Hamiltonian& h,
                                const std::vector<double>& noise_slice,
                                const CollapseParams& params, double mass_ratio, double dt);

struct CslTrajectory {
    std::vector<double> times;
    std::vector<ObservableSet> series;
    WaveFunction final_state;
    std::uint64_t seed;
    std::uint64_t stream_id;
    std::string scheme;  // "nonlinear" | "linear"
    std::string notes;   // colored-noise first-order caveat when applicable
};

struct CslTrajectoryConfig {
    CslStepper::Scheme scheme;
    NoiseSpec::Kind noise_kind;
    double omega_c = 0.0;
    double lambda;
    double r_c;
    double mass_ratio = 1.0;
    double t_end;
    double dt;
    int sample_every = 1;
};

/// One stochastic realization; observables recorded every sample_every steps.
CslTrajectory run_csl_trajectory(const WaveFunction& psi0, const Hamiltonian& h,
                                 const CslTrajectoryConfig& cfg, std::uint64_t seed,
                                 std::uint64_t stream_id);

/// CSL amplification for a rigid body. Exact limits: N^2 lambda when
/// size <= r_c, N lambda when interparticle distance >= r_c; in between,
/// Lambda = lambda * N * n_C with n_C = clamp((r_c/d_ip)^3, 1, N).
double csl_amplification(const RigidBodyGeometry& geom, const CollapseParams& params);

/// Energy growth of a free particle, 3D law: e0 + 3 m lambda hbar^2 t / (4 m0^2 r_c^2).
double csl_heating_slope(const ParticleSpec& particle, const CollapseParams& params,
                         double hbar = 1.0);
double heating_energy(double t, double e0, const ParticleSpec& particle,
                      const CollapseParams& params, double hbar = 1.0);

/// One third of the 3D slope: the value the 1D simulation reproduces.
double csl_heating_slope_1d(const ParticleSpec& particle, const CollapseParams& params,
                            double hbar = 1.0);

}  // namespace collapse
