// Command-line front end: stochastic simulations (dimensionless units,
// hbar = m0 = 1), noise stream generation, heating predictions (SI), and
// exclusion-curve computation (SI). All stochastic paths are seeded and
// deterministic: a fixed --seed reproduces output byte for byte.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "collapse/bounds.hpp"
#include "collapse/constants.hpp"
#include "collapse/dissipative.hpp"
#include "collapse/ensemble.hpp"

using namespace collapse;

namespace {

struct GridOptions {
    double x_min = -20.0;
    double x_max = 20.0;
    int n_points = 256;
};

void add_grid_options(CLI::App* cmd, GridOptions& g) {
    cmd->add_option("--x-min", g.x_min, "Grid lower edge (dimensionless)");
    cmd->add_option("--x-max", g.x_max, "Grid upper edge");
    cmd->add_option("--n-points", g.n_points, "Grid points (power of two, >= 8)");
}

struct InitialStateOptions {
    double separation = 6.0;  // 0 => single packet at the origin
    double width = 0.5;
    double momentum = 0.0;
};

void add_state_options(CLI::App* cmd, InitialStateOptions& s) {
    cmd->add_option("--separation", s.separation,
                    "Initial +-a/2 superposition separation (0 for a single packet)");
    cmd->add_option("--width", s.width, "Packet width");
    cmd->add_option("--momentum", s.momentum, "Packet momentum");
}

WaveFunction build_initial_state(const Grid1D& grid, const InitialStateOptions& s) {
    if (s.separation == 0.0) return gaussian_packet(grid, 0.0, s.width, s.momentum);
    return superpose(gaussian_packet(grid, -0.5 * s.separation, s.width, s.momentum),
                     gaussian_packet(grid, 0.5 * s.separation, s.width, s.momentum), 1.0, 1.0);
}

/// Default step: band-edge kinetic phase under 0.1 rad, snapped so that an
/// integer number of steps lands exactly on t_end.
double auto_dt(const Grid1D& grid, const Hamiltonian& h, double t_end) {
    const double dt = Propagator::suggested_dt(grid, h, 0.1);
    const double steps = std::max(1.0, std::ceil(t_end / dt));
    return t_end / steps;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

void maybe_dump_final(const std::string& path, const Hamiltonian& h, const GrwConfig* grw_cfg,
                      const CslRunConfig* csl_cfg, const WaveFunction& psi0, std::uint64_t seed) {
    if (path.empty()) return;
    std::ofstream out = open_out(path);
    if (grw_cfg) {
        const GrwTrajectory traj = run_grw_trajectory(psi0, h, *grw_cfg, seed, 0);
        dump_state(traj.final_state, out);
    } else {
        const CslTrajectoryConfig cfg{csl_cfg->scheme, csl_cfg->noise_kind, csl_cfg->omega_c,
                                      csl_cfg->lambda, csl_cfg->r_c, csl_cfg->mass_ratio,
                                      csl_cfg->t_end, csl_cfg->dt,
                                      std::max(1, static_cast<int>(csl_cfg->t_end / csl_cfg->dt))};
        const CslTrajectory traj = run_csl_trajectory(psi0, h, cfg, seed, 0);
        dump_state(traj.final_state, out);
    }
}

int run_simulate_grw(const GridOptions& go, const InitialStateOptions& so, double lambda,
                     double r_c, long long n_particles, double t_end, double dt,
                     int trajectories, int samples, std::uint64_t seed, bool serial,
                     double mass, const std::string& out_path, const std::string& dump_path) {
    const Grid1D grid(go.x_min, go.x_max, go.n_points);
    const WaveFunction psi0 = build_initial_state(grid, so);
    const Hamiltonian h = Hamiltonian::free_particle(mass);
    if (dt <= 0.0) dt = auto_dt(grid, h, t_end);

    GrwConfig cfg{amplified_rate_grw(n_particles, lambda), r_c, t_end, dt, 1};
    const int total_steps = static_cast<int>(std::llround(t_end / dt));
    cfg.sample_every = std::max(1, total_steps / std::max(1, samples));

    const EnsembleConfig ens{trajectories, seed,
                             serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel};
    const GrwEnsembleResult res = run_grw_ensemble(psi0, h, cfg, ens);

    std::ofstream out = open_out(out_path);
    out << "time,mean,variance,event_count\n";
    const auto mean = res.mean_x.column_means();
    const auto var = res.var_x.column_means();
    const auto events = res.events.column_means();
    char buf[160];
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e,%.9e\n", res.times[i], mean[i], var[i],
                      events[i]);
        out << buf;
    }

    maybe_dump_final(dump_path, h, &cfg, nullptr, psi0, seed);
    return 0;
}

int run_simulate_csl(const GridOptions& go, const InitialStateOptions& so, CslRunConfig cfg,
                     int trajectories, int samples, std::uint64_t seed, bool serial,
                     double mass, const std::string& out_path, const std::string& dump_path) {
    const Grid1D grid(go.x_min, go.x_max, go.n_points);
    const WaveFunction psi0 = build_initial_state(grid, so);
    const Hamiltonian h = Hamiltonian::free_particle(mass);
    if (cfg.dt <= 0.0) cfg.dt = auto_dt(grid, h, cfg.t_end);

    const int total_steps = static_cast<int>(std::llround(cfg.t_end / cfg.dt));
    cfg.sample_every = std::max(1, total_steps / std::max(1, samples));

    const EnsembleConfig ens{trajectories, seed,
                             serial ? ExecutionPolicy::serial : ExecutionPolicy::parallel};
    const CslEnsembleResult res = run_csl_ensemble(psi0, h, cfg, ens);

    if (!res.notes.empty()) std::cerr << "note: " << res.notes << "\n";

    std::ofstream out = open_out(out_path);
    out << "time,mean,variance,energy\n";
    const auto mean = res.mean_x.column_means();
    const auto var = res.var_x.column_means();
    const auto energy = res.energy.column_means();
    char buf[160];
    for (std::size_t i = 0; i < res.times.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9e,%.9e,%.9e,%.9e\n", res.times[i], mean[i], var[i],
                      energy[i]);
        out << buf;
    }

    maybe_dump_final(dump_path, h, nullptr, &cfg, psi0, seed);
    return 0;
}

int run_noise_gen(const std::string& kind, double omega_c, double dt, double dx, int cells,
                  long long steps, std::uint64_t seed, const std::string& format,
                  const std::string& out_path) {
    const Grid1D grid(0.0, dx * cells, cells);
    const NoiseSpec spec = kind == "white" ? NoiseSpec::white(grid, dt, seed)
                                           : NoiseSpec::exponential(omega_c, grid, dt, seed);
    NoiseField field(spec);

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        os = &file;
    } else if (format == "f64") {
        throw std::runtime_error("binary output requires --out");
    }

    char buf[32];
    for (long long s = 0; s < steps; ++s) {
        const auto& slice = field.next_slice();
        if (format == "f64") {
            os->write(reinterpret_cast<const char*>(slice.data()),
                      static_cast<std::streamsize>(slice.size() * sizeof(double)));
        } else {
            for (int c = 0; c < cells; ++c) {
                std::snprintf(buf, sizeof buf, "%.17g", slice[c]);
                *os << buf << (c + 1 < cells ? "," : "\n");
            }
        }
    }
    return 0;
}

int run_heat(double mass, double lambda, double r_c, double t_csl, double duration, double e0,
             bool as_json) {
    const CollapseParams params(lambda, r_c);
    const ParticleSpec particle(mass, constants::nucleon_mass);

    const double de_white =
        heating_energy(duration, 0.0, particle, params, constants::hbar);
    const double dT_white = de_white / (1.5 * constants::k_boltzmann);

    const DissipativeDerived derived =
        derive_dissipative(DissipativeParams(params, t_csl, mass));
    const double de_dis = dissipative_energy_gain(duration, e0, derived);
    const double dT_dis = de_dis / (1.5 * constants::k_boltzmann);

    if (as_json) {
        nlohmann::json j;
        j["convention"] = "SI inputs; Delta T = Delta E / ((3/2) kB); 3D heating law";
        j["inputs"] = {{"mass_kg", mass},        {"lambda_per_s", lambda},
                       {"r_c_m", r_c},           {"t_csl_K", t_csl},
                       {"duration_s", duration}, {"initial_energy_J", e0}};
        j["white"] = {{"delta_e_J", de_white}, {"delta_t_K", dT_white}};
        j["dissipative"] = {{"k", derived.k},
                            {"chi_per_s", derived.chi},
                            {"h_as_J", derived.h_as},
                            {"delta_e_J", de_dis},
                            {"delta_t_K", dT_dis}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    std::printf("heating over %.6g s (mass %.6g kg, lambda %.6g /s, r_c %.6g m)\n", duration,
                mass, lambda, r_c);
    std::printf("  white CSL:        Delta E = %.6e J   Delta T = %.6e K\n", de_white, dT_white);
    std::printf("  dissipative CSL (T_CSL = %.6g K): k = %.6e, chi = %.6e /s, H_as = %.6e J\n",
                t_csl, derived.k, derived.chi, derived.h_as);
    std::printf("                    Delta E = %.6e J   Delta T = %.6e K\n", de_dis, dT_dis);
    return 0;
}

int run_bounds(const std::string& experiments_path, const std::string& variant_name, double t_csl,
               double omega_c, double rc_min, double rc_max, int rc_points,
               const std::string& out_path, const std::string& report_path) {
    const std::vector<ExperimentRecord> records = ingest_experiments(experiments_path);

    ModelVariant variant = ModelVariant::white();
    if (variant_name == "dissipative") variant = ModelVariant::dissipative(t_csl);
    else if (variant_name == "colored") variant = ModelVariant::colored(omega_c);

    const std::vector<double> rc_grid = make_rc_grid(rc_min, rc_max, rc_points);
    const ExclusionReport report = build_report(records, rc_grid, variant);

    if (!out_path.empty()) {
        std::ofstream out = open_out(out_path);
        write_curves_csv(report, out);
    } else {
        write_curves_csv(report, std::cout);
    }
    if (!report_path.empty()) {
        std::ofstream out = open_out(report_path);
        out << report_json(report);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Collapse-model toolkit: GRW/CSL simulation, heating predictions, "
                 "and (lambda, r_C) exclusion curves"};
    app.require_subcommand(1);

    // ---- simulate ----
    CLI::App* simulate = app.add_subcommand("simulate", "Run stochastic trajectory ensembles "
                                                        "(dimensionless units, hbar = m0 = 1)");
    simulate->require_subcommand(1);

    GridOptions grid_grw, grid_csl;
    InitialStateOptions state_grw, state_csl;

    // simulate grw
    double grw_lambda = 1.0, grw_rc = 1.0, grw_t_end = 1.0, grw_dt = 0.0, grw_mass = 1.0;
    long long grw_n_particles = 1;
    int grw_traj = 100, grw_samples = 50;
    std::uint64_t grw_seed = 1;
    bool grw_serial = false;
    std::string grw_out = "grw.csv", grw_dump;

    CLI::App* grw = simulate->add_subcommand("grw", "Poisson-timed Gaussian localizations");
    grw->add_option("--lambda", grw_lambda, "Single-particle collapse rate");
    grw->add_option("--rc", grw_rc, "Correlation length");
    grw->add_option("--n-particles", grw_n_particles, "Rigid-body size (rate becomes N lambda)");
    grw->add_option("--t-end", grw_t_end, "Simulation time");
    grw->add_option("--dt", grw_dt, "Time step (default: 0.1 rad band-edge phase rule)");
    grw->add_option("--trajectories", grw_traj, "Ensemble size");
    grw->add_option("--samples", grw_samples, "Recorded sample times");
    grw->add_option("--seed", grw_seed, "RNG seed");
    grw->add_option("--mass", grw_mass, "Particle mass");
    grw->add_option("--out", grw_out, "Output CSV (time,mean,variance,event_count)");
    grw->add_option("--dump-final", grw_dump, "Dump the final state of trajectory 0 (x re im)");
    grw->add_flag("--serial", grw_serial, "Use the serial reference runner");
    add_grid_options(grw, grid_grw);
    add_state_options(grw, state_grw);

    // simulate csl
    std::string csl_scheme = "nonlinear", csl_noise = "white";
    double csl_omega_c = 1.0, csl_lambda = 0.1, csl_rc = 1.0, csl_mass = 1.0;
    double csl_t_end = 1.0, csl_dt = 0.0;
    int csl_traj = 100, csl_samples = 50;
    std::uint64_t csl_seed = 1;
    bool csl_serial = false;
    std::string csl_out = "csl.csv", csl_dump;

    CLI::App* csl = simulate->add_subcommand("csl", "Continuous localization (1D reduction)");
    csl->add_option("--scheme", csl_scheme, "Integrator: nonlinear | linear")
        ->check(CLI::IsMember({"nonlinear", "linear"}));
    csl->add_option("--noise", csl_noise, "Noise kind: white | colored")
        ->check(CLI::IsMember({"white", "colored"}));
    csl->add_option("--omega-c", csl_omega_c, "Colored-noise cutoff");
    csl->add_option("--lambda", csl_lambda, "Collapse rate");
    csl->add_option("--rc", csl_rc, "Correlation length");
    csl->add_option("--mass", csl_mass,
                    "Particle mass in units of m0 (enters both H and lambda_eff)");
    csl->add_option("--t-end", csl_t_end, "Simulation time");
    csl->add_option("--dt", csl_dt, "Time step (default: 0.1 rad band-edge phase rule; "
                                    "keep lambda_eff dt <= 1e-3 for nonlinear)");
    csl->add_option("--trajectories", csl_traj, "Ensemble size");
    csl->add_option("--samples", csl_samples, "Recorded sample times");
    csl->add_option("--seed", csl_seed, "RNG seed");
    csl->add_option("--out", csl_out, "Output CSV (time,mean,variance,energy)");
    csl->add_option("--dump-final", csl_dump, "Dump the final state of trajectory 0 (x re im)");
    csl->add_flag("--serial", csl_serial, "Use the serial reference runner");
    add_grid_options(csl, grid_csl);
    add_state_options(csl, state_csl);

    // ---- noise-gen ----
    std::string ng_kind = "white", ng_format = "csv", ng_out;
    double ng_omega_c = 1.0, ng_dt = 0.01, ng_dx = 0.1;
    int ng_cells = 8;
    long long ng_steps = 100;
    std::uint64_t ng_seed = 1;

    CLI::App* noise_gen = app.add_subcommand("noise-gen", "Emit a noise slice stream for audit");
    noise_gen->add_option("--kind", ng_kind, "white | exponential")
        ->check(CLI::IsMember({"white", "exponential"}));
    noise_gen->add_option("--omega-c", ng_omega_c, "Cutoff (exponential kind)");
    noise_gen->add_option("--dt", ng_dt, "Slice time step");
    noise_gen->add_option("--dx", ng_dx, "Cell size");
    noise_gen->add_option("--cells", ng_cells, "Cells per slice (power of two, >= 8)");
    noise_gen->add_option("--steps", ng_steps, "Number of slices");
    noise_gen->add_option("--seed", ng_seed, "RNG seed");
    noise_gen->add_option("--format", ng_format, "csv | f64 (raw little-endian doubles)")
        ->check(CLI::IsMember({"csv", "f64"}));
    noise_gen->add_option("--out", ng_out, "Output path (stdout for csv if omitted)");

    // ---- heat ----
    double heat_mass = constants::hydrogen_mass;
    double heat_lambda = 1e-16, heat_rc = 1e-7, heat_t_csl = 1.0;
    double heat_duration = constants::seconds_per_year, heat_e0 = 0.0;
    bool heat_json = false;

    CLI::App* heat = app.add_subcommand("heat", "Collapse-induced heating (SI units)");
    heat->add_option("--mass", heat_mass, "Particle mass in kg");
    heat->add_option("--lambda", heat_lambda, "Collapse rate in 1/s");
    heat->add_option("--rc", heat_rc, "Correlation length in m");
    heat->add_option("--t-csl", heat_t_csl, "Noise temperature in K (dissipative model)");
    heat->add_option("--duration", heat_duration, "Duration in s (default: one year)");
    heat->add_option("--initial-energy", heat_e0, "Initial energy in J (dissipative model)");
    heat->add_flag("--json", heat_json, "Machine-readable output");

    // ---- bounds ----
    std::string b_experiments, b_variant = "white", b_out, b_report;
    double b_t_csl = 1.0, b_omega_c = 1e12, b_rc_min = 1e-9, b_rc_max = 1e-3;
    int b_rc_points = 60;

    CLI::App* bounds = app.add_subcommand("bounds", "Exclusion curves in the (lambda, r_C) plane");
    bounds->add_option("--experiments", b_experiments, "Experiment descriptor JSON")
        ->required()
        ->check(CLI::ExistingFile);
    bounds->add_option("--variant", b_variant, "white | dissipative | colored")
        ->check(CLI::IsMember({"white", "dissipative", "colored"}));
    bounds->add_option("--t-csl", b_t_csl, "Noise temperature in K (dissipative)");
    bounds->add_option("--omega-c", b_omega_c, "Noise cutoff in Hz (colored)");
    bounds->add_option("--rc-min", b_rc_min, "Smallest r_c in m");
    bounds->add_option("--rc-max", b_rc_max, "Largest r_c in m");
    bounds->add_option("--rc-points", b_rc_points, "Log-spaced grid size");
    bounds->add_option("--out", b_out, "Curves CSV (stdout if omitted)");
    bounds->add_option("--report", b_report, "Verdict report JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (grw->parsed())
            return run_simulate_grw(grid_grw, state_grw, grw_lambda, grw_rc, grw_n_particles,
                                    grw_t_end, grw_dt, grw_traj, grw_samples, grw_seed,
                                    grw_serial, grw_mass, grw_out, grw_dump);
        if (csl->parsed()) {
            CslRunConfig cfg{csl_scheme == "nonlinear" ? CslStepper::Scheme::nonlinear
                                                       : CslStepper::Scheme::linear,
                             csl_noise == "white" ? NoiseSpec::Kind::white
                                                  : NoiseSpec::Kind::exponential,
                             csl_omega_c, csl_lambda, csl_rc, csl_mass,
                             csl_t_end, csl_dt, 1};
            return run_simulate_csl(grid_csl, state_csl, cfg, csl_traj, csl_samples, csl_seed,
                                    csl_serial, csl_mass, csl_out, csl_dump);
        }
        if (noise_gen->parsed())
            return run_noise_gen(ng_kind, ng_omega_c, ng_dt, ng_dx, ng_cells, ng_steps, ng_seed,
                                 ng_format, ng_out);
        if (heat->parsed())
            return run_heat(heat_mass, heat_lambda, heat_rc, heat_t_csl, heat_duration, heat_e0,
                            heat_json);
        if (bounds->parsed())
            return run_bounds(b_experiments, b_variant, b_t_csl, b_omega_c, b_rc_min, b_rc_max,
                              b_rc_points, b_out, b_report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
