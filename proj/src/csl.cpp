#include "collapse/csl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace collapse {

MassDensityProfile smeared_density(const WaveFunction& psi, double r_c) {
    const Grid1D& g = psi.grid;
    std::vector<double> prob(g.n_points);
    for (int j = 0; j < g.n_points; ++j) prob[j] = std::norm(psi.amp[j]);
    Smearer s(g, r_c, Smearer::Kernel::unit_mass);
    std::vector<double> values = s.apply(prob);
    for (double& v : values) v = std::max(0.0, v);
    return MassDensityProfile{g, std::move(values)};
}

RigidBodyGeometry::RigidBodyGeometry(double n, double size_, double d_ip)
    : n_nucleons(n), size(size_), interparticle_distance(d_ip) {
    if (!(n >= 1.0)) throw std::invalid_argument("RigidBodyGeometry: n_nucleons must be >= 1");
    if (!(size > 0.0) || !(d_ip > 0.0))
        throw std::invalid_argument("RigidBodyGeometry: lengths must be > 0");
}

CslStepper::CslStepper(const Grid1D& grid, const Hamiltonian& h, const CollapseParams& params,
                       double mass_ratio, double dt, Scheme scheme)
    : scheme_(scheme),
      lambda_eff_(params.lambda * mass_ratio * mass_ratio),
      sqrt_lambda_eff_(std::sqrt(params.lambda) * mass_ratio),
      prop_(grid, h, dt),
      smear_g1_(grid, params.r_c, Smearer::Kernel::g1),
      g0_(smear_g1_.kernel_self_overlap()),
      density_(grid.n_points), mu_(grid.n_points), g_mu_(grid.n_points),
      g_dw_(grid.n_points), scratch_(grid.n_points) {
    if (!(mass_ratio > 0.0)) throw std::invalid_argument("CslStepper: mass ratio must be > 0");
}

void CslStepper::step_inplace(WaveFunction& psi, const std::vector<double>& noise_slice) {
    const Grid1D& g = psi.grid;
    const int n = g.n_points;
    if (static_cast<int>(noise_slice.size()) != n)
        throw std::invalid_argument("CslStepper: noise slice does not match grid");
    const double dt = prop_.dt();
    const double dx = g.dx();

    prop_.step_inplace(psi);

    if (scheme_ == Scheme::linear) {
        // Pure phase: psi *= exp(+i sqrt(lambda_eff) * (g * w)(y) * dt).
        smear_g1_.apply(noise_slice, g_dw_);
        for (int j = 0; j < n; ++j)
            psi.amp[j] *= std::polar(1.0, sqrt_lambda_eff_ * g_dw_[j] * dt);
        return;
    }

    // Nonlinear Euler-Maruyama substep (Ito). dW_c = slice_c * dt.
    for (int j = 0; j < n; ++j) density_[j] = std::norm(psi.amp[j]);
    smear_g1_.apply(density_, mu_);   // mu(x) = (g * |psi|^2)(x) = <M(x)>/(m0 * mass_ratio)
    smear_g1_.apply(mu_, g_mu_);      // (g * mu)(y)
    smear_g1_.apply(noise_slice, g_dw_);  // (g * w)(y); dW field = this * dt

    double mu_dw = 0.0, mu_sq = 0.0;
    for (int j = 0; j < n; ++j) {
        mu_dw += mu_[j] * noise_slice[j];
        mu_sq += mu_[j] * mu_[j];
    }
    mu_dw *= dx * dt;  // integral of mu dW
    mu_sq *= dx;

    double norm_sq = 0.0;
    for (int j = 0; j < n; ++j) {
        const double noise_term = sqrt_lambda_eff_ * (g_dw_[j] * dt - mu_dw);
        const double compensator = 0.5 * lambda_eff_ * (g0_ - 2.0 * g_mu_[j] + mu_sq) * dt;
        psi.amp[j] += (noise_term - compensator) * psi.amp[j];
        norm_sq += std::norm(psi.amp[j]);
    }
    norm_sq *= dx;

    if (!std::isfinite(norm_sq))
        throw std::runtime_error("CslStepper: non-finite amplitudes (step too large)");
    if (!(norm_sq > 1e-300))
        throw std::runtime_error("CslStepper: norm collapsed below threshold");

    last_norm_ = std::sqrt(norm_sq);
    const double inv = 1.0 / last_norm_;
    for (auto& z : psi.amp) z *= inv;
}

WaveFunction evolve_nonlinear_step(const WaveFunction& psi, const Hamiltonian& h,
                                   const std::vector<double>& noise_slice,
                                   const CollapseParams& params, double mass_ratio, double dt) {
    CslStepper stepper(psi.grid, h, params, mass_ratio, dt, CslStepper::Scheme::nonlinear);
    WaveFunction out = psi;
    stepper.step_inplace(out, noise_slice);
    return out;
}

WaveFunction evolve_linear_step(const WaveFunction& psi, const Hamiltonian& h,
                                const std::vector<double>& noise_slice,
                                const CollapseParams& params, double mass_ratio, double dt) {
    CslStepper stepper(psi.grid, h, params, mass_ratio, dt, CslStepper::Scheme::linear);
    WaveFunction out = psi;
    stepper.step_inplace(out, noise_slice);
    return out;
}

CslTrajectory run_csl_trajectory(const WaveFunction& psi0, const Hamiltonian& h,
                                 const CslTrajectoryConfig& cfg, std::uint64_t seed,
                                 std::uint64_t stream_id) {
    if (cfg.scheme == CslStepper::Scheme::nonlinear && cfg.noise_kind != NoiseSpec::Kind::white)
        throw std::invalid_argument("run_csl_trajectory: nonlinear scheme requires white noise");
    if (cfg.sample_every < 1)
        throw std::invalid_argument("run_csl_trajectory: sample_every must be >= 1");
    const long long n_steps = static_cast<long long>(std::llround(cfg.t_end / cfg.dt));
    if (n_steps < 1 || std::abs(n_steps * cfg.dt - cfg.t_end) > 1e-9 * cfg.t_end)
        throw std::invalid_argument("run_csl_trajectory: t_end must be a multiple of dt");

    CslStepper stepper(psi0.grid, h, CollapseParams(cfg.lambda, cfg.r_c), cfg.mass_ratio,
                       cfg.dt, cfg.scheme);
    NoiseField noise(NoiseSpec(cfg.noise_kind, cfg.omega_c, psi0.grid, cfg.dt, seed), stream_id);

    CslTrajectory traj{{}, {}, psi0, seed, stream_id,
                       cfg.scheme == CslStepper::Scheme::nonlinear ? "nonlinear" : "linear",
                       cfg.noise_kind == NoiseSpec::Kind::exponential
                           ? "colored noise: linear equation valid to first order in lambda"
                           : ""};

    WaveFunction psi = psi0;
    traj.times.push_back(0.0);
    traj.series.push_back(observables(psi, h, stepper.fft()));
    for (long long step = 1; step <= n_steps; ++step) {
        stepper.step_inplace(psi, noise.next_slice());
        if (step % cfg.sample_every == 0) {
            traj.times.push_back(step * cfg.dt);
            traj.series.push_back(observables(psi, h, stepper.fft()));
        }
    }
    traj.final_state = std::move(psi);
    return traj;
}

double csl_amplification(const RigidBodyGeometry& geom, const CollapseParams& params) {
    const double n = geom.n_nucleons;
    if (geom.size <= params.r_c) return n * n * params.lambda;
    if (geom.interparticle_distance >= params.r_c) return n * params.lambda;

    const double ratio = params.r_c / geom.interparticle_distance;
    const double n_c = std::clamp(ratio * ratio * ratio, 1.0, n);
    return params.lambda * n * n_c;
}

double csl_heating_slope(const ParticleSpec& particle, const CollapseParams& params, double hbar) {
    const double m0_rc = particle.m0 * params.r_c;
    return 3.0 * particle.mass * params.lambda * hbar * hbar / (4.0 * m0_rc * m0_rc);
}

double heating_energy(double t, double e0, const ParticleSpec& particle,
                      const CollapseParams& params, double hbar) {
    if (t < 0.0) throw std::invalid_argument("heating_energy: t must be >= 0");
    return e0 + csl_heating_slope(particle, params, hbar) * t;
}

double csl_heating_slope_1d(const ParticleSpec& particle, const CollapseParams& params,
                            double hbar) {
    return csl_heating_slope(particle, params, hbar) / 3.0;
}

}  // namespace collapse
