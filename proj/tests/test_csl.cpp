#include "doctest.h"

#include <cmath>
#include <numbers>

#include "collapse/constants.hpp"
#include "collapse/csl.hpp"
#include "collapse/ensemble.hpp"
#include "stat_utils.hpp"

using namespace collapse;

TEST_CASE("smeared density: delta-narrow packet gives the r_c Gaussian") {
    const Grid1D g(-8.0, 8.0, 1024);  // dx ~ 0.016
    const double r_c = 1.0;
    const WaveFunction psi = gaussian_packet(g, 0.0, 0.04, 0.0);
    const MassDensityProfile prof = smeared_density(psi, r_c);

    // Narrow |psi|^2 convolved with N(0, rc^2): nearly the kernel itself,
    // broadened to variance rc^2 + width^2/2.
    const double var = r_c * r_c + 0.04 * 0.04 / 2.0;
    double max_err = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        const double x = g.x(j);
        const double expected = std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
        max_err = std::max(max_err, std::abs(prof.values[j] - expected));
    }
    CHECK(max_err < 1e-8);
}

TEST_CASE("smeared density integrates to 1 and stays non-negative") {
    const Grid1D g(-16.0, 16.0, 256);
    const WaveFunction psi = superpose(gaussian_packet(g, -3.0, 0.8, 1.0),
                                       gaussian_packet(g, 4.0, 0.5, -0.5), {0.7, 0.1}, {0.4, 0.0});
    const MassDensityProfile prof = smeared_density(psi, 0.9);
    CHECK(oracle::trapezoid(prof.values, g.dx()) == doctest::Approx(1.0).epsilon(1e-10));
    for (double v : prof.values) CHECK(v >= 0.0);
}

TEST_CASE("smeared density of a wide cat is bimodal with equal peaks") {
    const Grid1D g(-16.0, 16.0, 512);
    const double r_c = 1.0;
    const WaveFunction cat = superpose(gaussian_packet(g, -5.0 * r_c, 0.4, 0.0),
                                       gaussian_packet(g, 5.0 * r_c, 0.4, 0.0), 1.0, 1.0);
    const MassDensityProfile prof = smeared_density(cat, r_c);

    double left_peak = 0.0, right_peak = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        if (g.x(j) < 0.0) left_peak = std::max(left_peak, prof.values[j]);
        else right_peak = std::max(right_peak, prof.values[j]);
    }
    const double mid = prof.values[g.n_points / 2];
    CHECK(left_peak / right_peak == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(mid < 0.1 * left_peak);
}

TEST_CASE("kernel self-overlap is 1: the 1D folding constant is trivial") {
    // Quadrature oracle for G(0) = integral of g1(x)^2 dx with the
    // (pi rc^2)^(-1/4) amplitude; the discrete overlap used by the stepper
    // must agree.
    const double r_c = 1.3;
    const double amp = std::pow(std::numbers::pi * r_c * r_c, -0.25);
    const double g0 = oracle::simpson(
        [&](double x) {
            const double g = amp * std::exp(-x * x / (2.0 * r_c * r_c));
            return g * g;
        },
        -20.0, 20.0, 20000);
    CHECK(g0 == doctest::Approx(1.0).epsilon(1e-12));

    const Grid1D g(-16.0, 16.0, 256);
    Smearer s(g, r_c, Smearer::Kernel::g1);
    CHECK(s.kernel_self_overlap() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lambda = 0 reduces both schemes to the pure Schrodinger step") {
    const Grid1D g(-16.0, 16.0, 256);
    const WaveFunction psi = gaussian_packet(g, 1.0, 1.0, 0.5);
    const Hamiltonian h = Hamiltonian::harmonic(1.0, 1.0);
    const double dt = 0.01;

    NoiseField noise(NoiseSpec::white(g, dt, 3));
    const auto& slice = noise.next_slice();
    const WaveFunction ref = evolve_step(psi, h, dt);

    // lambda -> 0 limit realized with a vanishing coupling.
    const CollapseParams tiny(1e-300, 1.0);
    const WaveFunction nl = evolve_nonlinear_step(psi, h, slice, tiny, 1.0, dt);
    const WaveFunction li = evolve_linear_step(psi, h, slice, tiny, 1.0, dt);
    for (int j = 0; j < g.n_points; ++j) {
        CHECK(std::abs(nl.amp[j] - ref.amp[j]) < 1e-12);
        CHECK(std::abs(li.amp[j] - ref.amp[j]) < 1e-12);
    }
}

TEST_CASE("linear scheme preserves the norm exactly at every step") {
    const Grid1D g(-16.0, 16.0, 128);
    WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    const Hamiltonian h = Hamiltonian::free_particle(1.0);
    const double dt = 0.05;
    CslStepper stepper(g, h, CollapseParams(0.5, 1.0), 1.0, dt, CslStepper::Scheme::linear);
    NoiseField noise(NoiseSpec::white(g, dt, 11));
    for (int i = 0; i < 200; ++i) stepper.step_inplace(psi, noise.next_slice());
    CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nonlinear step norm: 1e-9 at tiny coupling, O(lambda dt) at the weak bound") {
    const Grid1D g(-16.0, 16.0, 256);
    const Hamiltonian h = Hamiltonian::free_particle(1e6);
    const WaveFunction cat = superpose(gaussian_packet(g, -4.0, 0.5, 0.0),
                                       gaussian_packet(g, 4.0, 0.5, 0.0), 1.0, 1.0);

    // Documented bound for the 1e-9 guarantee: lambda_eff * dt <~ 5e-10.
    {
        const double dt = 5e-6;
        CslStepper stepper(g, h, CollapseParams(1e-4, 1.0), 1.0, dt, CslStepper::Scheme::nonlinear);
        NoiseField noise(NoiseSpec::white(g, dt, 7));
        WaveFunction psi = cat;
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            stepper.step_inplace(psi, noise.next_slice());
            worst = std::max(worst, std::abs(stepper.last_step_norm() - 1.0));
        }
        CHECK(worst < 1e-9);
    }

    // Production weak-error bound lambda_eff * dt = 1e-3: norm stays at that order.
    {
        const double dt = 1e-3;
        CslStepper stepper(g, h, CollapseParams(1.0, 1.0), 1.0, dt, CslStepper::Scheme::nonlinear);
        NoiseField noise(NoiseSpec::white(g, dt, 7));
        WaveFunction psi = cat;
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            stepper.step_inplace(psi, noise.next_slice());
            worst = std::max(worst, std::abs(stepper.last_step_norm() - 1.0));
        }
        CHECK(worst < 5e-3);
        CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-12));  // renormalized
    }
}

TEST_CASE("nonlinear scheme requires a white noise field in the ensemble runner") {
    const Grid1D g(-8.0, 8.0, 64);
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    CslRunConfig cfg{CslStepper::Scheme::nonlinear, NoiseSpec::Kind::exponential, 10.0,
                     0.1, 1.0, 1.0, 0.1, 0.01, 1};
    CHECK_THROWS_AS(run_csl_ensemble(psi, Hamiltonian::free_particle(1.0), cfg,
                                     EnsembleConfig{2, 1, ExecutionPolicy::serial}),
                    std::invalid_argument);
}

TEST_CASE("nonlinear dynamics keeps a narrow packet spreading like the free one") {
    const Grid1D g(-8.0, 8.0, 256);
    const double r_c = 1.0;
    const WaveFunction psi = gaussian_packet(g, 0.0, 0.2 * r_c, 0.0);
    const Hamiltonian h = Hamiltonian::free_particle(1.0);

    CslRunConfig cfg{CslStepper::Scheme::nonlinear, NoiseSpec::Kind::white, 0.0,
                     0.5, r_c, 1.0, 0.05, 0.002, 5};
    const EnsembleConfig ens{50, 41, ExecutionPolicy::parallel};
    const CslEnsembleResult res = run_csl_ensemble(psi, h, cfg, ens);

    const WaveFunction free_out = evolve(psi, h, cfg.t_end, cfg.dt);
    const double var_free = observables(free_out, h).position_variance;
    const double var_csl = res.var_x.column_means().back();
    CHECK(std::abs(var_csl - var_free) / var_free < 0.10);
}

TEST_CASE("nonlinear ensemble resolves a cat to either branch with Born weights") {
    const Grid1D g(-8.0, 8.0, 128);
    const double r_c = 1.0;
    const WaveFunction cat = superpose(gaussian_packet(g, -3.0, 0.3, 0.0),
                                       gaussian_packet(g, 3.0, 0.3, 0.0), 1.0, 1.0);
    const Hamiltonian h = Hamiltonian::free_particle(1e6);

    CslRunConfig cfg{CslStepper::Scheme::nonlinear, NoiseSpec::Kind::white, 0.0,
                     1.0, r_c, 1.0, 8.0, 1e-3, 1000};
    const EnsembleConfig ens{1000, 101, ExecutionPolicy::parallel};
    const CslEnsembleResult res = run_csl_ensemble(cat, h, cfg, ens);

    int plus = 0, resolved = 0;
    for (double mx : res.final_mean_x) {
        if (std::abs(mx) > 1.0) ++resolved;
        if (mx > 0.0) ++plus;
    }
    CHECK(resolved > 950);  // almost every trajectory picks a branch
    CHECK(std::abs(plus / 1000.0 - 0.5) <= 0.02);
}

TEST_CASE("noise-averaged energy growth matches the 1D master-equation slope") {
    // Linear scheme, free particle: slope = lambda_eff hbar^2 / (4 m r_c^2).
    const Grid1D g(-20.0, 20.0, 256);
    const double lambda = 0.01, r_c = 1.0;
    const WaveFunction psi = gaussian_packet(g, 0.0, 3.0, 0.0);
    const Hamiltonian h = Hamiltonian::free_particle(1.0);

    CslRunConfig cfg{CslStepper::Scheme::linear, NoiseSpec::Kind::white, 0.0,
                     lambda, r_c, 1.0, 80.0, 0.1, 50};
    const EnsembleConfig ens{400, 47, ExecutionPolicy::parallel};
    const CslEnsembleResult res = run_csl_ensemble(psi, h, cfg, ens);

    const std::vector<double> e_mean = res.energy.column_means();
    const double slope = oracle::fit_slope(res.times, e_mean);
    const double predicted =
        csl_heating_slope_1d(ParticleSpec(1.0, 1.0), CollapseParams(lambda, r_c));
    CHECK(predicted == doctest::Approx(lambda / 4.0).epsilon(1e-12));
    CHECK(std::abs(slope - predicted) / predicted < 0.10);
}

TEST_CASE("linear and nonlinear schemes agree on the noise-averaged energy") {
    const Grid1D g(-16.0, 16.0, 128);
    const double lambda = 0.05, r_c = 1.0;
    const WaveFunction psi = gaussian_packet(g, 0.0, 2.0, 0.0);
    const Hamiltonian h = Hamiltonian::free_particle(1.0);

    CslRunConfig lin{CslStepper::Scheme::linear, NoiseSpec::Kind::white, 0.0,
                     lambda, r_c, 1.0, 40.0, 0.02, 200};
    CslRunConfig nl = lin;
    nl.scheme = CslStepper::Scheme::nonlinear;

    const EnsembleConfig ens{200, 53, ExecutionPolicy::parallel};
    const CslEnsembleResult a = run_csl_ensemble(psi, h, lin, ens);
    const CslEnsembleResult b = run_csl_ensemble(psi, h, nl, ens);

    const double gain_lin = a.energy.column_means().back() - a.energy.column_means().front();
    const double gain_nl = b.energy.column_means().back() - b.energy.column_means().front();
    const double gain_th = csl_heating_slope_1d(ParticleSpec(1.0, 1.0),
                                                CollapseParams(lambda, r_c)) * 40.0;
    CHECK(std::abs(gain_lin - gain_th) / gain_th < 0.25);
    CHECK(std::abs(gain_nl - gain_th) / gain_th < 0.25);
}

TEST_CASE("lambda -> 0 continuity: energy gain is linear in lambda") {
    const Grid1D g(-16.0, 16.0, 128);
    const WaveFunction psi = gaussian_packet(g, 0.0, 2.0, 0.0);
    const Hamiltonian h = Hamiltonian::free_particle(1.0);

    auto gain = [&](double lambda) {
        CslRunConfig cfg{CslStepper::Scheme::linear, NoiseSpec::Kind::white, 0.0,
                         lambda, 1.0, 1.0, 20.0, 0.05, 100};
        const EnsembleConfig ens{150, 59, ExecutionPolicy::parallel};
        const CslEnsembleResult res = run_csl_ensemble(psi, h, cfg, ens);
        return res.energy.column_means().back() - res.energy.column_means().front();
    };
    const double g1 = gain(0.02), g2 = gain(0.04);
    CHECK(g2 / g1 == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("colored noise runs the linear scheme and records the caveat") {
    const Grid1D g(-8.0, 8.0, 64);
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    CslRunConfig cfg{CslStepper::Scheme::linear, NoiseSpec::Kind::exponential, 50.0,
                     0.1, 1.0, 1.0, 0.5, 0.01, 10};
    const CslEnsembleResult res = run_csl_ensemble(psi, Hamiltonian::free_particle(1.0), cfg,
                                                   EnsembleConfig{4, 61, ExecutionPolicy::serial});
    CHECK(res.scheme == "linear");
    CHECK(res.notes.find("first order") != std::string::npos);
}

TEST_CASE("single csl trajectory: determinism, metadata, lambda -> 0 limit") {
    const Grid1D g(-16.0, 16.0, 128);
    const WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.5);
    const Hamiltonian h = Hamiltonian::harmonic(1.0, 1.0);

    CslTrajectoryConfig cfg{CslStepper::Scheme::nonlinear, NoiseSpec::Kind::white, 0.0,
                            0.2, 1.0, 1.0, 0.5, 0.005, 10};
    const CslTrajectory a = run_csl_trajectory(psi, h, cfg, 71, 2);
    const CslTrajectory b = run_csl_trajectory(psi, h, cfg, 71, 2);
    CHECK(a.scheme == "nonlinear");
    CHECK(a.notes.empty());
    CHECK(a.times.size() == a.series.size());
    CHECK(a.times.back() == doctest::Approx(0.5));
    for (int j = 0; j < g.n_points; ++j) CHECK(a.final_state.amp[j] == b.final_state.amp[j]);

    // Vanishing coupling reproduces the deterministic propagator.
    cfg.lambda = 1e-300;
    const CslTrajectory free_traj = run_csl_trajectory(psi, h, cfg, 71, 2);
    const WaveFunction ref = evolve(psi, h, 0.5, 0.005);
    double max_err = 0.0;
    for (int j = 0; j < g.n_points; ++j)
        max_err = std::max(max_err, std::abs(free_traj.final_state.amp[j] - ref.amp[j]));
    CHECK(max_err < 1e-12);
}

TEST_CASE("nonlinear step flags overflow from an absurd step size") {
    const Grid1D g(-8.0, 8.0, 64);
    WaveFunction psi = gaussian_packet(g, 0.0, 1.0, 0.0);
    const Hamiltonian h = Hamiltonian::free_particle(1.0);
    CslStepper stepper(g, h, CollapseParams(1e300, 1.0), 1.0, 0.1,
                       CslStepper::Scheme::nonlinear);
    NoiseField noise(NoiseSpec::white(g, 0.1, 5));
    CHECK_THROWS_AS(stepper.step_inplace(psi, noise.next_slice()), std::runtime_error);
}

TEST_CASE("csl amplification: quoted regimes exact, interpolation continuous") {
    const double lambda = 1e-16;
    // size <= r_c: N^2 lambda, exactly.
    CHECK(csl_amplification(RigidBodyGeometry(100.0, 5e-8, 1e-9), CollapseParams(lambda, 1e-7)) ==
          100.0 * 100.0 * lambda);
    // interparticle distance >= r_c: N lambda, exactly.
    CHECK(csl_amplification(RigidBodyGeometry(100.0, 1e-5, 2e-7), CollapseParams(lambda, 1e-7)) ==
          100.0 * lambda);
    // N = 1 in both regimes.
    CHECK(csl_amplification(RigidBodyGeometry(1.0, 1e-9, 1e-10), CollapseParams(lambda, 1e-7)) ==
          lambda);
    CHECK(csl_amplification(RigidBodyGeometry(1.0, 1e-5, 1e-6), CollapseParams(lambda, 1e-7)) ==
          lambda);

    // Continuity at the clamps: a consistent cubic body, N = (size/d_ip)^3.
    const double d_ip = 1e-9;
    const double n = 1000.0;              // 10^3 nucleons, size = 10 d_ip
    const RigidBodyGeometry body(n, 1e-8, d_ip);
    // r_c = size: interpolation hits n_C = N.
    CHECK(csl_amplification(body, CollapseParams(lambda, 1e-8)) ==
          doctest::Approx(n * n * lambda).epsilon(1e-12));
    // r_c = d_ip: n_C = 1.
    CHECK(csl_amplification(body, CollapseParams(lambda, d_ip)) ==
          doctest::Approx(n * lambda).epsilon(1e-12));
    // Monotone in r_c between the limits.
    double prev = 0.0;
    for (double rc = 1.05e-9; rc < 1e-8; rc *= 1.3) {
        const double amp = csl_amplification(body, CollapseParams(lambda, rc));
        CHECK(amp >= prev);
        prev = amp;
    }
}

TEST_CASE("heating law: value at t = 0, unit values, and hydrogen per year") {
    const ParticleSpec unit(1.0, 1.0);
    const CollapseParams p(1.0, 1.0);
    CHECK(heating_energy(0.0, 2.5, unit, p) == 2.5);
    CHECK(heating_energy(1.0, 0.0, unit, p) == 0.75);  // 3/(4) exactly

    // Hydrogen at the GRW point over one year: Delta T ~ 7.6e-14 K.
    const ParticleSpec hydrogen(constants::hydrogen_mass, constants::nucleon_mass);
    const CollapseParams grw = canonical_points().grw;
    const double de = heating_energy(constants::seconds_per_year, 0.0, hydrogen, grw,
                                     constants::hbar);
    const double dT = de / (1.5 * constants::k_boltzmann);
    CHECK(dT > 3e-14);
    CHECK(dT < 3e-13);
}
